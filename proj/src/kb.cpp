#include "semchan/kb.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "semchan/errors.hpp"

namespace semchan {

bool AtomPattern::operator<(const AtomPattern& o) const {
    return std::tie(predicate, terms) < std::tie(o.predicate, o.terms);
}

bool AtomPattern::is_ground() const {
    return std::none_of(terms.begin(), terms.end(), [](const Term& t) { return t.is_var; });
}

GroundAtom AtomPattern::to_ground() const {
    GroundAtom a;
    a.predicate = predicate;
    a.args.reserve(terms.size());
    for (const auto& t : terms) a.args.push_back(t.name);
    return a;
}

std::string AtomPattern::str() const {
    std::string s = predicate;
    s += '(';
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s += ',';
        s += terms[i].name;
    }
    s += ')';
    return s;
}

Rule Rule::make(AtomPattern head, std::vector<AtomPattern> body) {
    if (body.empty()) throw std::invalid_argument("rule body must be non-empty: " + head.str());
    std::set<std::string> body_vars;
    for (const auto& p : body)
        for (const auto& t : p.terms)
            if (t.is_var) body_vars.insert(t.name);
    for (const auto& t : head.terms)
        if (t.is_var && !body_vars.count(t.name))
            throw std::invalid_argument("head variable " + t.name +
                                        " does not occur in the body of " + head.str());
    Rule r;
    r.head = std::move(head);
    r.body = std::move(body);
    return r;
}

bool Rule::operator<(const Rule& o) const {
    return std::tie(head, body) < std::tie(o.head, o.body);
}

std::string Rule::str() const {
    std::string s = head.str() + " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) s += ", ";
        s += body[i].str();
    }
    s += '.';
    return s;
}

std::set<std::string> KnowledgeBase::constants() const {
    std::set<std::string> out;
    for (const auto& a : atoms) out.insert(a.args.begin(), a.args.end());
    return out;
}

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Single-pass tokenizer/parser over the whole text, tracking line/col.
struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, line, col); }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws_and_comments() {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == '%') {
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws_and_comments();
        return pos >= text.size();
    }

    std::string ident() {
        skip_ws_and_comments();
        if (pos >= text.size() || !ident_char(peek())) fail("expected identifier");
        std::string s;
        while (pos < text.size() && ident_char(peek())) {
            s += peek();
            advance();
        }
        return s;
    }

    void expect(char c) {
        skip_ws_and_comments();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    bool accept(const char* s) {
        skip_ws_and_comments();
        const std::size_t len = std::char_traits<char>::length(s);
        if (text.compare(pos, len, s) != 0) return false;
        for (std::size_t i = 0; i < len; ++i) advance();
        return true;
    }

    AtomPattern atom_pattern() {
        AtomPattern p;
        p.predicate = ident();
        expect('(');
        while (true) {
            const std::string tok = ident();
            Term t;
            t.name = tok;
            t.is_var = std::isupper(static_cast<unsigned char>(tok[0])) != 0;
            p.terms.push_back(std::move(t));
            skip_ws_and_comments();
            if (peek() == ',') {
                advance();
                continue;
            }
            break;
        }
        expect(')');
        return p;
    }
};

} // namespace

std::pair<KnowledgeBase, ProofSystem> parse_kb(const std::string& text) {
    Parser p(text);
    KnowledgeBase kb;
    std::set<Rule> seen_rules;
    ProofSystem ps;

    while (!p.eof()) {
        const int at_line = p.line, at_col = p.col;
        AtomPattern head = p.atom_pattern();
        if (p.accept(":-")) {
            std::vector<AtomPattern> body;
            body.push_back(p.atom_pattern());
            while (true) {
                p.skip_ws_and_comments();
                if (p.peek() == ',') {
                    p.advance();
                    body.push_back(p.atom_pattern());
                } else {
                    break;
                }
            }
            p.expect('.');
            Rule r;
            try {
                r = Rule::make(std::move(head), std::move(body));
            } catch (const std::invalid_argument& e) {
                throw parse_error(e.what(), at_line, at_col);
            }
            if (seen_rules.insert(r).second) ps.rules.push_back(std::move(r));
        } else {
            p.expect('.');
            if (!head.is_ground())
                throw parse_error("fact contains variables: " + head.str(), at_line, at_col);
            kb.atoms.insert(head.to_ground());
        }
    }
    return {std::move(kb), std::move(ps)};
}

std::string serialize_kb(const KnowledgeBase& kb, const ProofSystem& ps) {
    std::string out;
    for (const auto& a : kb.atoms) {
        out += a.str();
        out += ".\n";
    }
    std::vector<Rule> rules = ps.rules;
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    for (const auto& r : rules) {
        out += r.str();
        out += '\n';
    }
    return out;
}

} // namespace semchan

#pragma once

#include <string>
#include <vector>

#include "semchan/atom.hpp"

namespace semchan {

// One term of a rule pattern. Variables are uppercase-initial identifiers,
// constants anything else.
struct Term {
    bool is_var = false;
    std::string name;

    bool operator==(const Term&) const = default;
    bool operator<(const Term& o) const {
        if (is_var != o.is_var) return is_var < o.is_var;
        return name < o.name;
    }
};

struct AtomPattern {
    std::string predicate;
    std::vector<Term> terms;

    bool operator==(const AtomPattern&) const = default;
    bool operator<(const AtomPattern& o) const;
    bool is_ground() const;
    GroundAtom to_ground() const; // requires is_ground()
    std::string str() const;
};

// A Horn rule Head :- Body1, ..., Bodym with m >= 1. Range-restricted:
// every head variable occurs in the body.
struct Rule {
    AtomPattern head;
    std::vector<AtomPattern> body;

    // Throws std::invalid_argument on empty body or a range-restriction leak.
    static Rule make(AtomPattern head, std::vector<AtomPattern> body);

    bool operator==(const Rule&) const = default;
    bool operator<(const Rule& o) const;
    std::string str() const;
};

// A stored state set S_O: finitely many ground atoms, canonical iteration.
struct KnowledgeBase {
    AtomSet atoms;

    // Constants appearing in the stored atoms.
    std::set<std::string> constants() const;
};

struct ProofSystem {
    std::vector<Rule> rules;
};

// Parses the line-oriented KB grammar:
//   fact:  Pred(c1,...,ck).
//   rule:  Head :- Body1, ..., Bodym.
//   '%' starts a comment; whitespace insignificant.
// Duplicates merge silently; non-range-restricted rules are rejected.
// Throws parse_error with 1-based line/col on malformed input.
std::pair<KnowledgeBase, ProofSystem> parse_kb(const std::string& text);

// Canonical text form: facts in canonical order, then rules sorted by their
// textual form, one per line. serialize(parse(t)) is a fixpoint of
// parse-then-serialize, bit-exact.
std::string serialize_kb(const KnowledgeBase& kb, const ProofSystem& ps);

} // namespace semchan

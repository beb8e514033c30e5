#include "semchan/closure.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "semchan/errors.hpp"

namespace semchan {

namespace {

using PredKey = std::pair<std::string, std::size_t>; // name, arity

// Atoms grouped by predicate for body matching.
struct AtomIndex {
    std::map<PredKey, std::vector<const GroundAtom*>> by_pred;

    void add(const GroundAtom& a) { by_pred[{a.predicate, a.args.size()}].push_back(&a); }

    const std::vector<const GroundAtom*>* bucket(const AtomPattern& p) const {
        const auto it = by_pred.find({p.predicate, p.terms.size()});
        return it == by_pred.end() ? nullptr : &it->second;
    }
};

using Binding = std::vector<std::pair<std::string, std::string>>; // var -> constant

const std::string* lookup(const Binding& b, const std::string& var) {
    for (const auto& [v, c] : b)
        if (v == var) return &c;
    return nullptr;
}

bool match(const AtomPattern& pat, const GroundAtom& atom, Binding& b) {
    const std::size_t mark = b.size();
    for (std::size_t i = 0; i < pat.terms.size(); ++i) {
        const Term& t = pat.terms[i];
        const std::string& c = atom.args[i];
        if (!t.is_var) {
            if (t.name != c) {
                b.resize(mark);
                return false;
            }
        } else if (const std::string* bound = lookup(b, t.name)) {
            if (*bound != c) {
                b.resize(mark);
                return false;
            }
        } else {
            b.emplace_back(t.name, c);
        }
    }
    return true;
}

GroundAtom instantiate(const AtomPattern& head, const Binding& b) {
    GroundAtom a;
    a.predicate = head.predicate;
    a.args.reserve(head.terms.size());
    for (const auto& t : head.terms) {
        if (!t.is_var) {
            a.args.push_back(t.name);
        } else {
            const std::string* c = lookup(b, t.name);
            a.args.push_back(*c); // range restriction: always bound
        }
    }
    return a;
}

// Left-to-right body join; position `delta_pos` is matched inside `delta`,
// the rest inside `full`. Emits each satisfied head instance.
template <typename Emit>
void join(const Rule& rule, std::size_t body_pos, std::size_t delta_pos,
          const AtomIndex& full, const AtomIndex& delta, Binding& b, Emit&& emit) {
    if (body_pos == rule.body.size()) {
        emit(instantiate(rule.head, b));
        return;
    }
    const AtomIndex& source = body_pos == delta_pos ? delta : full;
    const auto* bucket = source.bucket(rule.body[body_pos]);
    if (!bucket) return;
    const std::size_t mark = b.size();
    for (const GroundAtom* a : *bucket) {
        if (match(rule.body[body_pos], *a, b)) {
            join(rule, body_pos + 1, delta_pos, full, delta, b, emit);
            b.resize(mark);
        }
    }
}

// All heads derivable with at least one body atom drawn from delta.
template <typename Emit>
void fire(const ProofSystem& ps, const AtomIndex& full, const AtomIndex& delta, Emit&& emit) {
    Binding b;
    for (const Rule& r : ps.rules)
        for (std::size_t dp = 0; dp < r.body.size(); ++dp)
            join(r, 0, dp, full, delta, b, emit);
}

void check_guard(const AtomSet& gamma, const ProofSystem& ps, std::uint64_t guard) {
    const std::uint64_t size = herbrand_size(gamma, ps, guard);
    if (size > guard)
        throw guard_error("grounded atom universe exceeds the cap (" +
                          std::to_string(guard) + "); refusing to iterate");
}

} // namespace

std::uint64_t herbrand_size(const AtomSet& gamma, const ProofSystem& ps, std::uint64_t cap) {
    std::set<std::string> consts;
    for (const auto& a : gamma) consts.insert(a.args.begin(), a.args.end());
    std::set<PredKey> preds;
    for (const auto& a : gamma) preds.insert({a.predicate, a.args.size()});
    for (const auto& r : ps.rules) {
        preds.insert({r.head.predicate, r.head.terms.size()});
        for (const auto& p : r.body) {
            preds.insert({p.predicate, p.terms.size()});
            for (const auto& t : p.terms)
                if (!t.is_var) consts.insert(t.name);
        }
        for (const auto& t : r.head.terms)
            if (!t.is_var) consts.insert(t.name);
    }

    const std::uint64_t d = consts.size();
    std::uint64_t total = 0;
    for (const auto& [name, arity] : preds) {
        (void)name;
        std::uint64_t cells = 1;
        for (std::size_t i = 0; i < arity; ++i) {
            if (d == 0) {
                cells = 0;
                break;
            }
            if (cells > cap / d) return cap + 1; // saturate
            cells *= d;
        }
        if (total > cap - std::min(cells, cap)) return cap + 1;
        total += cells;
        if (total > cap) return cap + 1;
    }
    return total;
}

AtomSet tps_step(const AtomSet& gamma, const ProofSystem& ps, std::uint64_t guard) {
    check_guard(gamma, ps, guard);
    AtomIndex idx;
    for (const auto& a : gamma) idx.add(a);
    AtomSet out = gamma;
    // delta = full set: every rule instance with body ⊆ gamma fires once.
    Binding b;
    for (const Rule& r : ps.rules) join(r, 0, 0, idx, idx, b, [&](GroundAtom a) {
        out.insert(std::move(a));
    });
    return out;
}

ClosureStrata closure_strata(const AtomSet& gamma, const ProofSystem& ps, std::uint64_t guard) {
    check_guard(gamma, ps, guard);

    ClosureStrata cs;
    cs.atoms = gamma;
    cs.frontiers.push_back(gamma);
    for (const auto& a : gamma) cs.stratum[a] = 0;

    AtomIndex full;
    for (const auto& a : cs.atoms) full.add(a);

    // Semi-naive rounds: a new atom needs at least one body atom from the
    // previous frontier, so the rounds coincide with the naive T^n strata.
    AtomSet delta_set = gamma;
    int round = 0;
    while (!delta_set.empty()) {
        AtomIndex delta;
        for (const auto& a : delta_set) delta.add(a);
        AtomSet next;
        fire(ps, full, delta, [&](GroundAtom a) {
            if (!cs.atoms.count(a)) next.insert(std::move(a));
        });
        if (next.empty()) break;
        ++round;
        for (const auto& a : next) {
            cs.stratum[a] = round;
            cs.atoms.insert(a);
        }
        if (cs.atoms.size() > guard)
            throw guard_error("closure exceeded the size cap (" + std::to_string(guard) + ")");
        // set nodes are stable, so index the canonical copies in cs.atoms
        for (const auto& a : next) full.add(*cs.atoms.find(a));
        cs.frontiers.push_back(next);
        delta_set = std::move(next);
    }
    cs.rounds = round;
    return cs;
}

AtomSet closure(const AtomSet& gamma, const ProofSystem& ps, std::uint64_t guard) {
    return closure_strata(gamma, ps, guard).atoms;
}

std::optional<int> derivation_depth(const GroundAtom& s, const AtomSet& base,
                                    const ProofSystem& ps, std::uint64_t guard) {
    const ClosureStrata cs = closure_strata(base, ps, guard);
    const auto it = cs.stratum.find(s);
    if (it == cs.stratum.end()) return std::nullopt;
    return it->second;
}

} // namespace semchan

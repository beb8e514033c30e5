#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace semchan {

// A predicate applied to constants only — the unit of semantic state.
// Ordering is the canonical order: lexicographic on (predicate, args),
// byte-wise. Every container of atoms in this library iterates canonically.
struct GroundAtom {
    std::string predicate;
    std::vector<std::string> args;

    bool operator==(const GroundAtom& o) const {
        return predicate == o.predicate && args == o.args;
    }
    bool operator<(const GroundAtom& o) const {
        return std::tie(predicate, args) < std::tie(o.predicate, o.args);
    }

    // "Pred(a,b)" — doubles as the kernel-row label; for tokens over
    // [A-Za-z0-9_] the string order of labels agrees with the tuple order.
    std::string str() const {
        std::string s = predicate;
        s += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) s += ',';
            s += args[i];
        }
        s += ')';
        return s;
    }
};

using AtomSet = std::set<GroundAtom>;

inline std::vector<std::string> atom_labels(const AtomSet& atoms) {
    std::vector<std::string> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(a.str());
    return out;
}

} // namespace semchan

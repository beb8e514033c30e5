#include "semchan/core.hpp"

#include <algorithm>
#include <string>

namespace semchan {

CoreAnalysis extract_core(const KnowledgeBase& kb, const ProofSystem& ps,
                          std::uint64_t guard) {
    CoreAnalysis out;
    AtomSet current = kb.atoms;
    for (const auto& s : kb.atoms) { // canonical scan order
        AtomSet rest = current;
        rest.erase(s);
        if (closure(rest, ps, guard).count(s)) {
            current = std::move(rest); // s is derivable from the rest: drop it
        }
    }
    out.core = std::move(current);
    std::set_difference(kb.atoms.begin(), kb.atoms.end(), out.core.begin(), out.core.end(),
                        std::inserter(out.shortcuts, out.shortcuts.begin()));
    out.atomicity = static_cast<int>(out.core.size());

    const ClosureStrata cs = closure_strata(out.core, ps, guard);
    out.max_depth = 0;
    for (const auto& q : kb.atoms) {
        const int d = cs.stratum.at(q); // closure equivalence: every stored atom appears
        out.depth_by_atom[q] = d;
        out.max_depth = std::max(out.max_depth, d);
    }
    return out;
}

Ratio closure_fidelity(const AtomSet& s, const AtomSet& s_hat, const ProofSystem& ps,
                       std::uint64_t guard) {
    const AtomSet cs = closure(s, ps, guard);
    const AtomSet ch = closure(s_hat, ps, guard);
    AtomSet inter, uni;
    std::set_intersection(cs.begin(), cs.end(), ch.begin(), ch.end(),
                          std::inserter(inter, inter.begin()));
    std::set_union(cs.begin(), cs.end(), ch.begin(), ch.end(), std::inserter(uni, uni.begin()));
    if (uni.empty()) return Ratio::of(1, 1); // 0/0 := 1
    return Ratio::of(static_cast<std::int64_t>(inter.size()),
                     static_cast<std::int64_t>(uni.size()));
}

Ratio core_preservation_ratio(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                              const ProofSystem& ps, std::uint64_t guard) {
    const CoreAnalysis ca = extract_core(sender, ps, guard);
    if (ca.core.empty()) return Ratio::of(1, 1); // 0/0 := 1
    std::size_t preserved = 0;
    for (const auto& a : ca.core)
        if (receiver_vocab.count(a)) ++preserved;
    return Ratio::of(static_cast<std::int64_t>(preserved),
                     static_cast<std::int64_t>(ca.core.size()));
}

KnowledgeBase perturb(const KnowledgeBase& kb, const AtomSet& lost, const AtomSet& spurious) {
    std::string bad;
    for (const auto& a : lost)
        if (!kb.atoms.count(a)) bad += (bad.empty() ? "" : ", ") + a.str();
    if (!bad.empty())
        throw std::invalid_argument("perturb: lost atoms not stored in the base: " + bad);
    for (const auto& a : spurious)
        if (kb.atoms.count(a)) bad += (bad.empty() ? "" : ", ") + a.str();
    if (!bad.empty())
        throw std::invalid_argument("perturb: spurious atoms already stored: " + bad);

    KnowledgeBase out;
    std::set_difference(kb.atoms.begin(), kb.atoms.end(), lost.begin(), lost.end(),
                        std::inserter(out.atoms, out.atoms.begin()));
    out.atoms.insert(spurious.begin(), spurious.end());
    return out;
}

} // namespace semchan

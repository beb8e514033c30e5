#pragma once

#include <map>

#include "semchan/closure.hpp"
#include "semchan/rational.hpp"

namespace semchan {

// Irredundant core of a stored state set, plus the two scalar invariants it
// carries: atomicity (core size) and the maximum derivation depth of the
// stored states relative to the core.
struct CoreAnalysis {
    AtomSet core;                         // Atom(S)
    AtomSet shortcuts;                    // S \ core
    std::map<GroundAtom, int> depth_by_atom; // depth of each stored atom over core
    int atomicity = 0;
    int max_depth = 0;
};

// Greedy canonical-order irredundantization: scan S in canonical order,
// dropping s whenever s is derivable from the rest. Deterministic; the
// result generates the same closure and no element is derivable from the
// others.
CoreAnalysis extract_core(const KnowledgeBase& kb, const ProofSystem& ps,
                          std::uint64_t guard = kDefaultGuard);

// Jaccard index of the two deductive closures, exact. Convention 0/0 := 1.
Ratio closure_fidelity(const AtomSet& s, const AtomSet& s_hat,
                       const ProofSystem& ps, std::uint64_t guard = kDefaultGuard);

// |Atom(sender) ∩ receiver_vocab| / |Atom(sender)|, exact. 0/0 := 1.
Ratio core_preservation_ratio(const KnowledgeBase& sender,
                              const AtomSet& receiver_vocab,
                              const ProofSystem& ps,
                              std::uint64_t guard = kDefaultGuard);

// (kb \ lost) ∪ spurious. Preconditions: lost ⊆ kb.atoms and
// spurious ∩ kb.atoms = ∅; violations throw std::invalid_argument naming the
// offending atoms.
KnowledgeBase perturb(const KnowledgeBase& kb, const AtomSet& lost,
                      const AtomSet& spurious);

} // namespace semchan

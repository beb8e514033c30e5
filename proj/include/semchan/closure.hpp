#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "semchan/kb.hpp"

namespace semchan {

// Default cap on the grounded atom universe (sum over predicates of
// |constants|^arity). closure and friends refuse larger instances.
inline constexpr std::uint64_t kDefaultGuard = 1000000;

// Size of the grounded atom universe induced by gamma and ps, saturating at
// cap+1 so callers can compare against cap without overflow.
std::uint64_t herbrand_size(const AtomSet& gamma, const ProofSystem& ps,
                            std::uint64_t cap = kDefaultGuard);

// One inference round: gamma together with every head derivable from gamma by
// a single ground rule instance. Monotone in gamma.
AtomSet tps_step(const AtomSet& gamma, const ProofSystem& ps,
                 std::uint64_t guard = kDefaultGuard);

// Closure fixpoint with per-atom first-appearance rounds. stratum[s] = 0 for
// base atoms; frontiers[n] is the set first derived at round n.
struct ClosureStrata {
    AtomSet atoms;
    std::map<GroundAtom, int> stratum;
    std::vector<AtomSet> frontiers;
    int rounds = 0; // last round that added anything
};

ClosureStrata closure_strata(const AtomSet& gamma, const ProofSystem& ps,
                             std::uint64_t guard = kDefaultGuard);

// Least fixpoint of tps_step (semi-naive evaluation).
AtomSet closure(const AtomSet& gamma, const ProofSystem& ps,
                std::uint64_t guard = kDefaultGuard);

// min{n : s in T^n(base)}; nullopt is the infinity sentinel (not derivable).
std::optional<int> derivation_depth(const GroundAtom& s, const AtomSet& base,
                                    const ProofSystem& ps,
                                    std::uint64_t guard = kDefaultGuard);

} // namespace semchan

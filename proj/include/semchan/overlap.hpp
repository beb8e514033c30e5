#pragma once

#include "semchan/core.hpp"

#include <array>
#include <optional>

namespace semchan {

// The seven-set decomposition of a sender/receiver vocabulary pair.
struct OverlapDecomposition {
    AtomSet common;              // S_∩
    AtomSet lost;                // S_−
    AtomSet surplus;             // S_+
    AtomSet preserved_core;      // A_∩ = Atom(sender) ∩ receiver
    AtomSet lost_core;           // A_−
    AtomSet derivable_surplus;   // S_+ ∩ Cn(sender)
    AtomSet nonderivable_surplus; // S_+ \ Cn(sender)

    std::array<std::size_t, 7> counts() const {
        return {common.size(), lost.size(), surplus.size(), preserved_core.size(),
                lost_core.size(), derivable_surplus.size(), nonderivable_surplus.size()};
    }
};

OverlapDecomposition overlap(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                             const ProofSystem& ps, std::uint64_t guard = kDefaultGuard);

// Closure-reliability predicates for the pair. closure_fidelity_one is
// equivalent to f1 ∧ f2 and is cross-checked against the exact fidelity.
struct PairFeasibility {
    bool f1 = false;        // Atom(sender) ⊆ Cn(receiver)
    bool f1_strong = false; // Atom(sender) ⊆ receiver (no lost core)
    bool f2 = false;        // no non-derivable surplus
    bool closure_fidelity_one = false;
    Ratio f_cn{1, 1};
};

PairFeasibility feasibility(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                            const ProofSystem& ps, std::uint64_t guard = kDefaultGuard);

// A blocklength that may be structurally undefined; the reason is a
// machine-readable tag, never NaN.
struct MaybeBlocklength {
    std::optional<double> value;
    std::string reason; // "vocabulary-loss" | "closure-infeasible" | "" when defined
};

struct BlocklengthEstimate {
    MaybeBlocklength n_hamming; // log2|S_O| / C, needs lost = ∅
    MaybeBlocklength n_closure; // log2|Atom| / C, needs f1_strong ∧ f2
    std::optional<double> ratio; // n_closure / n_hamming when both defined
    double capacity_bits = 0.0;
};

BlocklengthEstimate blocklengths(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                                 double capacity_bits, const ProofSystem& ps,
                                 std::uint64_t guard = kDefaultGuard);

// Smallest vocabulary with all-true feasibility: the sender's core.
AtomSet min_vocabulary(const KnowledgeBase& sender, const ProofSystem& ps,
                       std::uint64_t guard = kDefaultGuard);

// Broadcast view: per-receiver feasibility, semantic bottlenecks (receivers
// whose closures miss the sender core), and the shared blocklength — defined
// when every non-bottleneck receiver is strongly feasible, and independent of
// how many such receivers there are.
struct BroadcastAnalysis {
    struct Receiver {
        PairFeasibility feasibility;
        bool bottleneck = false; // Atom(sender) ⊄ Cn(receiver)
    };
    std::vector<Receiver> receivers;
    std::vector<std::size_t> bottlenecks; // indices into receivers
    MaybeBlocklength n_closure;
    double capacity_bits = 0.0;
};

BroadcastAnalysis broadcast_analysis(const KnowledgeBase& sender,
                                     const std::vector<AtomSet>& receiver_vocabs,
                                     double capacity_bits, const ProofSystem& ps,
                                     std::uint64_t guard = kDefaultGuard);

} // namespace semchan

#pragma once

#include "semchan/rational.hpp"
#include "semchan/semantic_channel.hpp"

namespace semchan {

struct DistortionWeights {
    double alpha, beta, gamma; // must be >= 0 and sum to 1 within 1e-12
    DistortionWeights(double a, double b, double g);
};

enum class DistortionKind { hamming, closure, depth, composite };

struct DistortionMatrix {
    DistortionKind kind;
    std::vector<std::string> row_labels; // sender states
    std::vector<std::string> col_labels; // receiver states
    std::vector<double> v;               // row-major, values in [0,1]

    double at(std::size_t i, std::size_t j) const { return v[i * col_labels.size() + j]; }
};

// Indicator of inequality.
double d_hamming(const GroundAtom& s, const GroundAtom& s_hat);

// Jaccard distance of the closures after substituting s_hat for s in the
// base: 1 - |C_s ∩ C_ŝ| / |C_s ∪ C_ŝ| with C_s = Cn((Γ\{s})∪{s}).
// Convention 0/0 := 0. When s is not stored the substitution degenerates to
// addition, which stays well-formed.
Ratio d_closure(const GroundAtom& s, const GroundAtom& s_hat, const AtomSet& base,
                const ProofSystem& ps, std::uint64_t guard = kDefaultGuard);

// Depth mismatch relative to the sender core: 1 when s_hat is not derivable
// from the core, else min(|depth(s) - depth(s_hat)| / max(d_max,1), 1).
double d_depth(const GroundAtom& s, const GroundAtom& s_hat, const AtomSet& core,
               int d_max, const ProofSystem& ps, std::uint64_t guard = kDefaultGuard);

// alpha·d_H + beta·d_Cn + gamma·d_Dd.
double d_composite(const GroundAtom& s, const GroundAtom& s_hat,
                   const DistortionWeights& w, const AtomSet& base,
                   const AtomSet& core, int d_max, const ProofSystem& ps,
                   std::uint64_t guard = kDefaultGuard);

// Matrix builders over sender states (rows) x receiver states (cols).
// closure/depth/composite results are memoized per (base, rules, spaces)
// since closure calls dominate the cost.
DistortionMatrix hamming_matrix(const AtomSet& sender, const AtomSet& receiver_vocab);
DistortionMatrix closure_matrix(const AtomSet& sender, const AtomSet& receiver_vocab,
                                const AtomSet& base, const ProofSystem& ps,
                                std::uint64_t guard = kDefaultGuard);
DistortionMatrix depth_matrix(const AtomSet& sender, const AtomSet& receiver_vocab,
                              const AtomSet& core, int d_max, const ProofSystem& ps,
                              std::uint64_t guard = kDefaultGuard);
DistortionMatrix composite_matrix(const AtomSet& sender, const AtomSet& receiver_vocab,
                                  const DistortionWeights& w, const AtomSet& base,
                                  const AtomSet& core, int d_max, const ProofSystem& ps,
                                  std::uint64_t guard = kDefaultGuard);

// Σ_s P(s) Σ_ŝ κ(ŝ|s) d(s,ŝ), with the per-input conditional expectations.
struct ExpectedDistortion {
    double total = 0.0;
    std::vector<double> per_input; // aligned to the channel's input space
};

ExpectedDistortion expected_distortion(const SemanticChannel& chan,
                                       const Distribution& p_source,
                                       const DistortionMatrix& d);

// Expected Hamming distortion split by output region: confusion within the
// common vocabulary vs mass on spurious states. total = within + spurious.
struct HammingSplit {
    double within = 0.0;
    double spurious = 0.0;
    double total = 0.0;
};

HammingSplit hamming_decomposition(const SemanticChannel& chan,
                                   const Distribution& p_source);

} // namespace semchan

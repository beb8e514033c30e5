#pragma once

#include "semchan/invariants.hpp"

namespace semchan {

// Two-layer (n, M) block code: the core elements carry a random channel code
// drawn from the carrier's capacity-achieving input law; every redundant
// message reuses the codeword of a fixed core anchor and is meant to be
// re-derived, not transmitted distinctly.
struct BlockCode {
    std::vector<GroundAtom> message_set;  // all sender atoms, canonical order
    std::vector<GroundAtom> core_elements; // canonical order
    GroundAtom anchor;                     // canonical-first core element
    int n = 1;
    std::uint64_t seed = 0;
    double rate = 0.0; // log2|message_set| / n
    std::map<GroundAtom, std::vector<std::size_t>> encode; // symbol indices into w.input_space
};

// Requires the receiver vocabulary to contain the sender core (the error
// lists any missing core elements). Codewords are i.i.d. per symbol from the
// Blahut–Arimoto optimal input of w; colliding codewords are redrawn, at
// most 100 attempts each. Deterministic in (seed, n).
BlockCode build_two_layer_code(const KnowledgeBase& sender, const AtomSet& receiver_vocab,
                               const Kernel& w, int n, std::uint64_t seed,
                               const ProofSystem& ps, std::uint64_t guard = kDefaultGuard);

struct SimResult {
    int n = 0;
    long trials = 0; // per message
    double p_e_hat = 0.0;    // max over core messages of decode-error frequency
    double p_e_cn_hat = 0.0; // max over all messages of closure-error frequency
    double ci_halfwidth = 0.0; // 95% normal approx at the reported p_e_cn_hat
    std::uint64_t seed = 0;
    long redundant_closure_errors = 0; // must stay 0: anchors decode inside the closure

    std::string to_csv_row() const; // n,trials,p_e,p_e_cn,ci,seed
    static std::string csv_header();
};

// Sends every message `trials` times through independent per-symbol carrier
// draws, ML-decodes to a core element (canonical tie-break), and counts
// decode errors and closure errors (closure distortion over the sender base
// > 0). Bit-identical results for a given seed regardless of scheduling.
SimResult simulate(const BlockCode& code, const Kernel& w, long trials,
                   std::uint64_t seed, const ProofSystem& ps,
                   std::uint64_t guard = kDefaultGuard);

struct ConverseCheck {
    bool ok = false;
    double lhs_bits = 0.0; // log2|core|
    double rhs_bits = 0.0; // (n·C(W) + 1) / (1 - eps_hat)
    double slack = 0.0;    // rhs - lhs
};

// Evaluates log2|core| <= (n·C(W)+1)/(1-ε̂). Throws on ε̂ >= 1.
ConverseCheck converse_check(const BlockCode& code, const Kernel& w, double eps_hat,
                             double ba_tol = 1e-9);

struct InducedChannel {
    SemanticChannel chan;
    bool exact = false;   // full enumeration vs Monte Carlo rows
    double mc_ci = 0.0;   // 95% CI halfwidth per entry when !exact
};

// The end-to-end kernel the block code induces between sender states and the
// receiver vocabulary: exact enumeration over received tuples when
// |Ŝ_C|^n <= 4096, Monte Carlo otherwise. Output mass lies entirely on the
// core, so the induced channel has zero spurious probability.
InducedChannel induced_semantic_channel(const BlockCode& code, const Kernel& w,
                                        const AtomSet& receiver_vocab,
                                        const KnowledgeBase& sender,
                                        std::uint64_t mc_trials = 200000,
                                        std::uint64_t seed = 7);

} // namespace semchan

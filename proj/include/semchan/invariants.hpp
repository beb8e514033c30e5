#pragma once

#include "semchan/info.hpp"

#include <json.hpp>

namespace semchan {

// Family III: worst-case core self-preservation and spurious-output mass.
struct NoisePairIndices {
    double phi_atom = 0.0; // min over core of κ(a|a); 0 on core loss
    double psi_plus = 0.0; // max over inputs of spurious output mass
    std::vector<double> p_cap;  // per input: mass on non-spurious outputs
    std::vector<double> p_plus; // per input: mass on spurious outputs
    std::map<std::string, double> pi; // per core element a: κ(a|a)
};

NoisePairIndices noise_pair_indices(const SemanticChannel& chan, const AtomSet& core);

// Family IV: F = 1 - max_s expected closure distortion, E = max_s expected
// depth distortion (both conditional on the input).
struct QualityIndices {
    double fidelity_index = 1.0;
    double depth_expansion = 0.0;
    std::string worst_fidelity_input; // argmax of the closure expectation
    std::string worst_depth_input;
};

QualityIndices quality_indices(const SemanticChannel& chan, const ProofSystem& ps,
                               std::uint64_t guard = kDefaultGuard);

// Family V: receiver core size / depth minus the sender's, each measured
// against its own irredundant core.
struct StructuralShifts {
    int delta_A = 0;
    int delta_Dd = 0;
};

StructuralShifts structural_shifts(const KnowledgeBase& sender,
                                   const AtomSet& receiver_vocab,
                                   const ProofSystem& ps,
                                   std::uint64_t guard = kDefaultGuard);

// All six invariant families for one semantic channel.
struct InvariantReport {
    // I — intrinsic
    int atomicity = 0;
    int max_depth = 0;
    // II — set-level
    Ratio rho_atom{1, 1};
    Ratio f_cn{1, 1};
    // III — noise pair
    double phi_atom = 0.0;
    double psi_plus = 0.0;
    std::vector<double> p_cap, p_plus;
    std::map<std::string, double> pi;
    // IV — quality
    double fidelity_index = 1.0;
    double depth_expansion = 0.0;
    // V — structural shifts
    int delta_A = 0;
    int delta_Dd = 0;
    // VI — information
    double shannon_capacity = 0.0;
    double semantic_capacity = 0.0;
    std::string semantic_capacity_mode;
    double semantic_mi = 0.0;
    double fano_lower = 0.0;

    nlohmann::json to_json() const;
    std::string to_csv() const; // flat two-line CSV (header + values)
};

// Assembles the full report for a channel whose carrier is w, under source
// law p_source (uniform over the sender if omitted at call sites). The
// semantic-capacity entry assumes full enabling on both legs, as the
// constructed encoder/decoder pair has.
InvariantReport invariant_report(const SemanticChannel& chan, const ProofSystem& ps,
                                 const Kernel& w, const Distribution& p_source,
                                 std::uint64_t guard = kDefaultGuard);

} // namespace semchan

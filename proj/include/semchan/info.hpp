#pragma once

#include "semchan/distortion.hpp"
#include "semchan/enabling.hpp"

namespace semchan {

// Base-2 throughout; 0·log 0 := 0 and 0·log(0/0) := 0.
double entropy(const Distribution& p);
double binary_entropy(double x);
double mutual_information(const JointDistribution& j);

struct CapacityResult {
    double bits = 0.0;
    Distribution input;   // capacity-achieving input law
    int iterations = 0;
    double gap_bits = 0.0; // duality gap at termination
};

// Blahut–Arimoto with the duality-gap stopping rule. Throws
// convergence_error (reporting the gap) if the cap is hit first.
CapacityResult shannon_capacity(const Kernel& w, double tol = 1e-9,
                                int max_iter = 100000);

// Closed form for the q-ary symmetric channel, for cross-checks.
double q_symmetric_capacity(int q, double p);

struct SemanticCapacityResult {
    enum class Mode {
        exact_enumeration,      // max over enabling-respecting det. encoder/decoder pairs
        equality_theorem,       // full enabling, |S_O| >= |S_C| and |Ŝ_O| >= |Ŝ_C|
        full_enabling_shortcut, // full enabling outside those size conditions:
                                // C(W) is the data-processing ceiling; equality
                                // holds only in the embedding regime
    };
    double bits = 0.0;
    Mode mode = Mode::exact_enumeration;
    std::string note;
};

// Capacity of the semantic channel over all enabling-respecting encoders and
// decoders. Exact enumeration is gated by
// |S_C|^|S_O| · |Ŝ_O|^|Ŝ_C| <= guard; beyond the guard full enabling is
// required and C(W) is returned with a provenance flag.
SemanticCapacityResult semantic_capacity(const std::vector<std::string>& sender_space,
                                         const std::vector<std::string>& receiver_space,
                                         const Kernel& w, const EnablingMap& e_enc,
                                         const EnablingMap& e_dec,
                                         double guard = 1e7, double ba_tol = 1e-7);

// H - h_b(eps) - eps·log2(out_size - 1), clamped at 0.
double fano_lower_bound(double h_source, double eps, std::size_t out_size);

struct RateDistortionResult {
    double bits = 0.0;
    double distortion = 0.0; // achieved E d at the returned point
    double slope = 0.0;      // Lagrange slope used (0 at the R=0 end)
};

// Rate–distortion point at distortion budget D: Blahut–Arimoto over a
// Lagrange-slope sweep with bisection until the achieved distortion is
// within tol of D. D at the distortion floor is handled by the
// support-restricted iteration. Throws std::invalid_argument when D is
// below the floor.
RateDistortionResult rate_distortion(const Distribution& p_source,
                                     const DistortionMatrix& d, double D,
                                     double tol = 1e-6);

} // namespace semchan

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "semchan/distribution.hpp"

namespace semchan {

// Row-stochastic Markov kernel between explicit finite label spaces.
// Rows sum to 1 within kStochasticTol; nothing is ever silently renormalized.
struct Kernel {
    std::vector<std::string> input_space;
    std::vector<std::string> output_space;
    std::vector<double> m; // row-major |in| x |out|

    Kernel(std::vector<std::string> in, std::vector<std::string> out,
           std::vector<double> matrix);

    double at(std::size_t i, std::size_t j) const { return m[i * output_space.size() + j]; }
    std::size_t in_index(const std::string& label) const;
    std::size_t out_index(const std::string& label) const;
    Distribution row(std::size_t i) const;

    // True iff every entry is exactly 0.0 or 1.0 (function kernels; their
    // compositions are exact in floating point).
    bool deterministic() const;

    static Kernel identity(std::vector<std::string> space);

private:
    std::map<std::string, std::size_t> in_index_, out_index_;
};

// Matrix product; requires k1.output_space == k2.input_space.
Kernel compose(const Kernel& k1, const Kernel& k2);

// 0/1 kernel of a total function in_space -> out_space.
Kernel deterministic_kernel(const std::map<std::string, std::string>& f,
                            std::vector<std::string> in_space,
                            std::vector<std::string> out_space);

// q-ary symmetric channel on labels "0".."q-1": diagonal 1-p, off p/(q-1).
Kernel q_symmetric_channel(int q, double p);

// Lazy n-fold memoryless extension W^{⊗n}: probabilities are evaluated per
// tuple pair; dense() materializes the matrix only within the guard.
struct ProductKernel {
    Kernel base;
    int n;

    ProductKernel(Kernel base_, int n_);

    std::size_t tuple_count_in() const;
    std::size_t tuple_count_out() const;

    // Probability of an output tuple given an input tuple (index form).
    double prob(const std::vector<std::size_t>& in_tuple,
                const std::vector<std::size_t>& out_tuple) const;

    // Dense kernel on comma-joined tuple labels. n = 1 returns base itself.
    // Throws guard_error when |space|^n exceeds the guard on either side.
    Kernel dense(std::size_t guard = 4096) const;
};

ProductKernel product_extension(const Kernel& w, int n);

// Marginal p·k on the kernel's output space.
Distribution push_forward(const Distribution& p, const Kernel& k);

// Joint law P(x,y) = p(x) k(y|x), kept in product shape (row-major over
// x then y) so information quantities can read the marginal structure.
struct JointDistribution {
    std::vector<std::string> x_space;
    std::vector<std::string> y_space;
    std::vector<double> mass; // row-major |x| x |y|

    double at(std::size_t i, std::size_t j) const { return mass[i * y_space.size() + j]; }
    Distribution marginal_x() const;
    Distribution marginal_y() const;
    // Flattened view as a Distribution over pair labels "x⊗y".
    Distribution flatten() const;
};

JointDistribution joint(const Distribution& p, const Kernel& k);

} // namespace semchan

#include "semchan/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "semchan/errors.hpp"

namespace semchan {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// x·ln x with the 0·ln 0 := 0 convention.
double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

} // namespace

double entropy(const Distribution& p) {
    double h = 0.0;
    for (double m : p.mass) h -= xlnx(m);
    return h / kLn2;
}

double binary_entropy(double x) {
    if (!(x >= 0.0) || !(x <= 1.0)) throw std::invalid_argument("binary_entropy: x outside [0,1]");
    return -(xlnx(x) + xlnx(1.0 - x)) / kLn2;
}

double mutual_information(const JointDistribution& j) {
    const Distribution px = j.marginal_x();
    const Distribution py = j.marginal_y();
    double i = 0.0;
    for (std::size_t x = 0; x < j.x_space.size(); ++x)
        for (std::size_t y = 0; y < j.y_space.size(); ++y) {
            const double m = j.at(x, y);
            if (m > 0.0) i += m * std::log(m / (px.mass[x] * py.mass[y]));
        }
    return i / kLn2;
}

CapacityResult shannon_capacity(const Kernel& w, double tol, int max_iter) {
    const std::size_t nx = w.input_space.size();
    const std::size_t ny = w.output_space.size();
    std::vector<double> r(nx, 1.0 / static_cast<double>(nx));
    std::vector<double> q(ny), c(nx);
    double gap_nats = std::numeric_limits<double>::infinity();
    const double tol_nats = tol * kLn2;
    for (int it = 1; it <= max_iter; ++it) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) q[y] += r[x] * w.at(x, y);
        // c_x = exp Σ_y W(y|x) ln(W(y|x)/q(y)); zero-probability terms drop out
        double lo = 0.0, hi = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            double e = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                const double wv = w.at(x, y);
                if (wv > 0.0) e += wv * std::log(wv / q[y]);
            }
            c[x] = std::exp(e);
            lo += r[x] * c[x];
            hi = std::max(hi, c[x]);
        }
        const double il = std::log(lo);
        const double iu = std::log(hi);
        gap_nats = iu - il;
        if (gap_nats <= tol_nats)
            return {std::max(il, 0.0) / kLn2, Distribution(w.input_space, r), it, gap_nats / kLn2};
        for (std::size_t x = 0; x < nx; ++x) r[x] *= c[x] / lo;
    }
    throw convergence_error("capacity iteration hit the iteration cap", gap_nats / kLn2);
}

double q_symmetric_capacity(int q, double p) {
    if (q < 2 || !(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("q_symmetric_capacity");
    return (std::log(static_cast<double>(q)) + xlnx(1.0 - p) + (p > 0.0 ? p * std::log(p / (q - 1)) : 0.0)) / kLn2;
}

namespace {

// Index form of an enabling map over explicit label spaces.
std::vector<std::vector<std::size_t>> allowed_indices(const EnablingMap& e,
                                                      const std::vector<std::string>& in,
                                                      const std::vector<std::string>& out) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t j = 0; j < out.size(); ++j) pos[out[j]] = j;
    std::vector<std::vector<std::size_t>> idx(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        for (const auto& y : e.allowed.at(in[i])) idx[i].push_back(pos.at(y));
    return idx;
}

// Odometer over choice lists; calls visit for every assignment.
template <typename Visit>
void for_each_choice(const std::vector<std::vector<std::size_t>>& choices, Visit visit) {
    std::vector<std::size_t> pick(choices.size(), 0);
    for (;;) {
        std::vector<std::size_t> assign(choices.size());
        for (std::size_t i = 0; i < choices.size(); ++i) assign[i] = choices[i][pick[i]];
        visit(assign);
        std::size_t i = 0;
        while (i < choices.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == choices.size()) break;
    }
}

} // namespace

SemanticCapacityResult semantic_capacity(const std::vector<std::string>& sender_space,
                                         const std::vector<std::string>& receiver_space,
                                         const Kernel& w, const EnablingMap& e_enc,
                                         const EnablingMap& e_dec, double guard,
                                         double ba_tol) {
    if (e_enc.input_space != sender_space || e_enc.output_space != w.input_space)
        throw std::invalid_argument("semantic_capacity: encoder enabling spaces mismatch");
    if (e_dec.input_space != w.output_space || e_dec.output_space != receiver_space)
        throw std::invalid_argument("semantic_capacity: decoder enabling spaces mismatch");

    const double cost = std::pow(static_cast<double>(w.input_space.size()),
                                 static_cast<double>(sender_space.size())) *
                        std::pow(static_cast<double>(receiver_space.size()),
                                 static_cast<double>(w.output_space.size()));
    if (cost <= guard) {
        const auto enc_choices = allowed_indices(e_enc, sender_space, w.input_space);
        const auto dec_choices = allowed_indices(e_dec, w.output_space, receiver_space);
        const std::size_t ns = sender_space.size();
        const std::size_t nr = receiver_space.size();
        // Capacity depends only on the end-to-end matrix, so dedupe before BA.
        std::map<std::vector<double>, bool> seen;
        double best = 0.0;
        std::size_t pairs = 0;
        for_each_choice(enc_choices, [&](const std::vector<std::size_t>& f) {
            for_each_choice(dec_choices, [&](const std::vector<std::size_t>& g) {
                ++pairs;
                std::vector<double> m(ns * nr, 0.0);
                for (std::size_t s = 0; s < ns; ++s)
                    for (std::size_t y = 0; y < w.output_space.size(); ++y)
                        m[s * nr + g[y]] += w.at(f[s], y);
                if (!seen.emplace(m, true).second) return;
                const Kernel k(sender_space, receiver_space, m);
                best = std::max(best, shannon_capacity(k, ba_tol).bits);
            });
        });
        return {best, SemanticCapacityResult::Mode::exact_enumeration,
                "maximum over " + std::to_string(pairs) + " encoder/decoder pairs (" +
                    std::to_string(seen.size()) + " distinct end-to-end channels)"};
    }

    if (!e_enc.is_full() || !e_dec.is_full())
        throw guard_error(
            "semantic_capacity: enumeration exceeds the guard and enabling is restricted");
    const double cw = shannon_capacity(w, ba_tol).bits;
    if (sender_space.size() >= w.input_space.size() &&
        receiver_space.size() >= w.output_space.size())
        return {cw, SemanticCapacityResult::Mode::equality_theorem,
                "full enabling with state spaces at least as large as the carrier: "
                "semantic capacity equals carrier capacity"};
    return {cw, SemanticCapacityResult::Mode::full_enabling_shortcut,
            "carrier capacity reported as the data-processing ceiling; the state-space "
            "size conditions for equality fail, so the attainable value may be lower"};
}

double fano_lower_bound(double h_source, double eps, std::size_t out_size) {
    if (out_size == 0) throw std::invalid_argument("fano_lower_bound: empty output space");
    if (!(eps >= 0.0) || !(eps <= 1.0)) throw std::invalid_argument("fano_lower_bound: eps");
    double v = h_source - binary_entropy(eps);
    if (out_size > 1) v -= eps * std::log2(static_cast<double>(out_size - 1));
    return std::max(v, 0.0);
}

namespace {

struct RdPoint {
    double rate_bits = 0.0;
    double distortion = 0.0;
};

// Blahut iteration at fixed Lagrange slope; mask restricts each row's support
// (used for the distortion-floor endpoint, where the slope is formally
// infinite).
RdPoint blahut_rd(const Distribution& p, const DistortionMatrix& d, double slope,
                  const std::vector<char>* mask) {
    const std::size_t nx = p.space.size();
    const std::size_t ny = d.col_labels.size();
    std::vector<double> r(ny, 1.0 / static_cast<double>(ny));
    std::vector<double> q(nx * ny, 0.0);
    double prev_rate = std::numeric_limits<double>::infinity();
    RdPoint out;
    for (int it = 0; it < 20000; ++it) {
        double rate = 0.0, dist = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            double z = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                const bool ok = !mask || (*mask)[x * ny + y];
                q[x * ny + y] = ok ? r[y] * std::exp(-slope * d.at(x, y)) : 0.0;
                z += q[x * ny + y];
            }
            for (std::size_t y = 0; y < ny; ++y) {
                q[x * ny + y] /= z;
                const double v = q[x * ny + y];
                if (v > 0.0 && p.mass[x] > 0.0) {
                    rate += p.mass[x] * v * std::log(v / r[y]);
                    dist += p.mass[x] * v * d.at(x, y);
                }
            }
        }
        std::fill(r.begin(), r.end(), 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) r[y] += p.mass[x] * q[x * ny + y];
        out = {std::max(rate, 0.0) / kLn2, dist};
        if (std::abs(rate - prev_rate) <= 1e-13) break;
        prev_rate = rate;
    }
    return out;
}

} // namespace

RateDistortionResult rate_distortion(const Distribution& p_source, const DistortionMatrix& d,
                                     double D, double tol) {
    if (p_source.space != d.row_labels)
        throw std::invalid_argument("rate_distortion: source space mismatch");
    if (!(D >= 0.0)) throw std::invalid_argument("rate_distortion: negative budget");
    const std::size_t nx = d.row_labels.size();
    const std::size_t ny = d.col_labels.size();

    double dmin = 0.0;
    std::vector<char> floor_mask(nx * ny, 0);
    for (std::size_t x = 0; x < nx; ++x) {
        double m = d.at(x, 0);
        for (std::size_t y = 1; y < ny; ++y) m = std::min(m, d.at(x, y));
        for (std::size_t y = 0; y < ny; ++y) floor_mask[x * ny + y] = d.at(x, y) <= m + 1e-12;
        dmin += p_source.mass[x] * m;
    }
    if (D < dmin - tol) throw std::invalid_argument("rate_distortion: budget below the floor");

    double d0 = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < ny; ++y) {
        double col = 0.0;
        for (std::size_t x = 0; x < nx; ++x) col += p_source.mass[x] * d.at(x, y);
        d0 = std::min(d0, col);
    }
    if (D >= d0) return {0.0, d0, 0.0};

    if (D <= dmin + tol) {
        const RdPoint floor = blahut_rd(p_source, d, 0.0, &floor_mask);
        return {floor.rate_bits, dmin, std::numeric_limits<double>::infinity()};
    }

    // D(slope) decreases from d0 toward dmin; bracket then bisect to the budget.
    double lo = 0.0, hi = 1.0;
    RdPoint at_hi = blahut_rd(p_source, d, hi, nullptr);
    while (at_hi.distortion > D && hi < 1e18) {
        lo = hi;
        hi *= 2.0;
        at_hi = blahut_rd(p_source, d, hi, nullptr);
    }
    RdPoint best = at_hi;
    double slope = hi;
    for (int it = 0; it < 200 && std::abs(best.distortion - D) > tol; ++it) {
        slope = 0.5 * (lo + hi);
        best = blahut_rd(p_source, d, slope, nullptr);
        (best.distortion > D ? lo : hi) = slope;
    }
    return {best.rate_bits, best.distortion, slope};
}

} // namespace semchan

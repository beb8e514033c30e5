#include "semchan/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "semchan/errors.hpp"

namespace semchan {

namespace {

std::map<std::string, std::size_t> build_index(const std::vector<std::string>& space,
                                               const char* what) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (!idx.emplace(space[i], i).second)
            throw std::invalid_argument(std::string(what) + ": duplicate label " + space[i]);
    return idx;
}

} // namespace

Distribution::Distribution(std::vector<std::string> space_, std::vector<double> mass_)
    : space(std::move(space_)), mass(std::move(mass_)) {
    if (space.size() != mass.size())
        throw std::invalid_argument("Distribution: space/mass size mismatch");
    index_ = build_index(space, "Distribution");
    double sum = 0.0;
    for (double m : mass) {
        if (!(m >= 0.0)) throw std::invalid_argument("Distribution: negative or NaN mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > kStochasticTol)
        throw std::invalid_argument("Distribution: mass sums to " + std::to_string(sum));
}

Distribution Distribution::uniform(std::vector<std::string> space_) {
    if (space_.empty()) throw std::invalid_argument("Distribution: empty space");
    std::vector<double> m(space_.size(), 1.0 / static_cast<double>(space_.size()));
    return Distribution(std::move(space_), std::move(m));
}

Distribution Distribution::point(std::vector<std::string> space_, const std::string& at) {
    std::vector<double> m(space_.size(), 0.0);
    bool found = false;
    for (std::size_t i = 0; i < space_.size(); ++i)
        if (space_[i] == at) {
            m[i] = 1.0;
            found = true;
        }
    if (!found) throw std::invalid_argument("Distribution: point label not in space: " + at);
    return Distribution(std::move(space_), std::move(m));
}

std::size_t Distribution::index(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) throw std::invalid_argument("Distribution: unknown label " + label);
    return it->second;
}

std::vector<std::size_t> Distribution::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < mass.size(); ++i)
        if (mass[i] > 0.0) s.push_back(i);
    return s;
}

Kernel::Kernel(std::vector<std::string> in, std::vector<std::string> out,
               std::vector<double> matrix)
    : input_space(std::move(in)), output_space(std::move(out)), m(std::move(matrix)) {
    if (input_space.empty() || output_space.empty())
        throw std::invalid_argument("Kernel: empty space");
    if (m.size() != input_space.size() * output_space.size())
        throw std::invalid_argument("Kernel: matrix shape mismatch");
    in_index_ = build_index(input_space, "Kernel input");
    out_index_ = build_index(output_space, "Kernel output");
    for (std::size_t i = 0; i < input_space.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < output_space.size(); ++j) {
            const double x = at(i, j);
            if (!(x >= 0.0)) throw std::invalid_argument("Kernel: negative or NaN entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > kStochasticTol)
            throw std::invalid_argument("Kernel: row " + input_space[i] + " sums to " +
                                        std::to_string(sum));
    }
}

std::size_t Kernel::in_index(const std::string& label) const {
    const auto it = in_index_.find(label);
    if (it == in_index_.end()) throw std::invalid_argument("Kernel: unknown input " + label);
    return it->second;
}

std::size_t Kernel::out_index(const std::string& label) const {
    const auto it = out_index_.find(label);
    if (it == out_index_.end()) throw std::invalid_argument("Kernel: unknown output " + label);
    return it->second;
}

Distribution Kernel::row(std::size_t i) const {
    return Distribution(output_space,
                        std::vector<double>(m.begin() + i * output_space.size(),
                                            m.begin() + (i + 1) * output_space.size()));
}

bool Kernel::deterministic() const {
    for (double x : m)
        if (x != 0.0 && x != 1.0) return false;
    return true;
}

Kernel Kernel::identity(std::vector<std::string> space) {
    const std::size_t n = space.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    std::vector<std::string> out = space;
    return Kernel(std::move(space), std::move(out), std::move(m));
}

Kernel compose(const Kernel& k1, const Kernel& k2) {
    if (k1.output_space != k2.input_space)
        throw std::invalid_argument("compose: middle spaces differ");
    const std::size_t ni = k1.input_space.size();
    const std::size_t nm = k1.output_space.size();
    const std::size_t no = k2.output_space.size();
    std::vector<double> m(ni * no, 0.0);
    for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t k = 0; k < nm; ++k) {
            const double w = k1.at(i, k);
            if (w == 0.0) continue;
            for (std::size_t j = 0; j < no; ++j) m[i * no + j] += w * k2.at(k, j);
        }
    return Kernel(k1.input_space, k2.output_space, std::move(m));
}

Kernel deterministic_kernel(const std::map<std::string, std::string>& f,
                            std::vector<std::string> in_space,
                            std::vector<std::string> out_space) {
    const std::size_t no = out_space.size();
    std::map<std::string, std::size_t> out_idx;
    for (std::size_t j = 0; j < no; ++j) out_idx[out_space[j]] = j;

    std::vector<double> m(in_space.size() * no, 0.0);
    for (std::size_t i = 0; i < in_space.size(); ++i) {
        const auto it = f.find(in_space[i]);
        if (it == f.end())
            throw std::invalid_argument("deterministic_kernel: no image for " + in_space[i]);
        const auto jt = out_idx.find(it->second);
        if (jt == out_idx.end())
            throw std::invalid_argument("deterministic_kernel: image escapes output space: " +
                                        it->second);
        m[i * no + jt->second] = 1.0;
    }
    return Kernel(std::move(in_space), std::move(out_space), std::move(m));
}

Kernel q_symmetric_channel(int q, double p) {
    if (q < 2) throw std::invalid_argument("q_symmetric_channel: q must be >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("q_symmetric_channel: p must lie in [0,1]");
    std::vector<std::string> labels;
    labels.reserve(q);
    for (int i = 0; i < q; ++i) labels.push_back(std::to_string(i));
    const double off = p / static_cast<double>(q - 1);
    std::vector<double> m(static_cast<std::size_t>(q) * q, off);
    for (int i = 0; i < q; ++i) m[static_cast<std::size_t>(i) * q + i] = 1.0 - p;
    std::vector<std::string> out = labels;
    return Kernel(std::move(labels), std::move(out), std::move(m));
}

ProductKernel::ProductKernel(Kernel base_, int n_) : base(std::move(base_)), n(n_) {
    if (n < 1) throw std::invalid_argument("product_extension: n must be >= 1");
}

namespace {

std::uint64_t ipow_saturating(std::uint64_t b, int e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

} // namespace

std::size_t ProductKernel::tuple_count_in() const {
    return ipow_saturating(base.input_space.size(), n, SIZE_MAX / 2);
}

std::size_t ProductKernel::tuple_count_out() const {
    return ipow_saturating(base.output_space.size(), n, SIZE_MAX / 2);
}

double ProductKernel::prob(const std::vector<std::size_t>& in_tuple,
                           const std::vector<std::size_t>& out_tuple) const {
    if (in_tuple.size() != static_cast<std::size_t>(n) ||
        out_tuple.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("ProductKernel: tuple length != n");
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= base.at(in_tuple[i], out_tuple[i]);
    return p;
}

namespace {

// Enumerates index tuples in row-major order and renders the joined label.
void tuples(const std::vector<std::string>& space, int n,
            std::vector<std::string>& labels) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::string lab;
        for (int i = 0; i < n; ++i) {
            if (i) lab += ',';
            lab += space[idx[i]];
        }
        labels.push_back(std::move(lab));
        int pos = n - 1;
        while (pos >= 0 && ++idx[pos] == space.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
}

} // namespace

Kernel ProductKernel::dense(std::size_t guard) const {
    if (n == 1) return base;
    const std::size_t ni = ipow_saturating(base.input_space.size(), n, guard);
    const std::size_t no = ipow_saturating(base.output_space.size(), n, guard);
    if (ni > guard || no > guard)
        throw guard_error("product_extension: |space|^n exceeds the dense guard (" +
                          std::to_string(guard) + ")");

    std::vector<std::string> in_labels, out_labels;
    tuples(base.input_space, n, in_labels);
    tuples(base.output_space, n, out_labels);

    std::vector<double> m(ni * no);
    std::vector<std::size_t> it(n, 0), ot(n);
    for (std::size_t i = 0; i < ni; ++i) {
        std::fill(ot.begin(), ot.end(), 0);
        for (std::size_t j = 0; j < no; ++j) {
            m[i * no + j] = prob(it, ot);
            int pos = n - 1;
            while (pos >= 0 && ++ot[pos] == base.output_space.size()) ot[pos--] = 0;
        }
        int pos = n - 1;
        while (pos >= 0 && ++it[pos] == base.input_space.size()) it[pos--] = 0;
    }
    return Kernel(std::move(in_labels), std::move(out_labels), std::move(m));
}

ProductKernel product_extension(const Kernel& w, int n) { return ProductKernel(w, n); }

Distribution push_forward(const Distribution& p, const Kernel& k) {
    if (p.space != k.input_space)
        throw std::invalid_argument("push_forward: distribution space != kernel input space");
    std::vector<double> out(k.output_space.size(), 0.0);
    for (std::size_t i = 0; i < p.mass.size(); ++i) {
        if (p.mass[i] == 0.0) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += p.mass[i] * k.at(i, j);
    }
    return Distribution(k.output_space, std::move(out));
}

Distribution JointDistribution::marginal_x() const {
    std::vector<double> mx(x_space.size(), 0.0);
    for (std::size_t i = 0; i < x_space.size(); ++i)
        for (std::size_t j = 0; j < y_space.size(); ++j) mx[i] += at(i, j);
    return Distribution(x_space, std::move(mx));
}

Distribution JointDistribution::marginal_y() const {
    std::vector<double> my(y_space.size(), 0.0);
    for (std::size_t i = 0; i < x_space.size(); ++i)
        for (std::size_t j = 0; j < y_space.size(); ++j) my[j] += at(i, j);
    return Distribution(y_space, std::move(my));
}

Distribution JointDistribution::flatten() const {
    std::vector<std::string> labels;
    labels.reserve(mass.size());
    for (const auto& x : x_space)
        for (const auto& y : y_space) labels.push_back(x + "⊗" + y);
    return Distribution(std::move(labels), mass);
}

JointDistribution joint(const Distribution& p, const Kernel& k) {
    if (p.space != k.input_space)
        throw std::invalid_argument("joint: distribution space != kernel input space");
    JointDistribution j;
    j.x_space = p.space;
    j.y_space = k.output_space;
    j.mass.resize(p.space.size() * k.output_space.size());
    for (std::size_t i = 0; i < p.space.size(); ++i)
        for (std::size_t y = 0; y < k.output_space.size(); ++y)
            j.mass[i * k.output_space.size() + y] = p.mass[i] * k.at(i, y);
    return j;
}

} // namespace semchan

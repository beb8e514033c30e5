#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace semchan {

// Exact nonnegative rational for set-ratio quantities (Jaccard indices,
// preservation ratios). Always stored reduced with den > 0.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio of(std::int64_t n, std::int64_t d) {
        if (d <= 0) throw std::invalid_argument("Ratio: denominator must be positive");
        if (n < 0) throw std::invalid_argument("Ratio: negative numerator");
        const std::int64_t g = std::gcd(n, d);
        return Ratio{g ? n / g : 0, g ? d / g : 1};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Ratio& o) const { return !(*this == o); }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace semchan

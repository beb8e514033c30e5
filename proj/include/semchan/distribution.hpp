#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace semchan {

inline constexpr double kStochasticTol = 1e-12;

// Probability mass function on an explicit ordered label space.
struct Distribution {
    std::vector<std::string> space;
    std::vector<double> mass;

    // Validates alignment, nonnegativity, and sum = 1 within kStochasticTol.
    Distribution(std::vector<std::string> space_, std::vector<double> mass_);

    static Distribution uniform(std::vector<std::string> space_);
    static Distribution point(std::vector<std::string> space_, const std::string& at);

    std::size_t size() const { return space.size(); }
    std::size_t index(const std::string& label) const; // throws on unknown label
    std::vector<std::size_t> support() const;          // indices with mass > 0

private:
    std::map<std::string, std::size_t> index_;
};

} // namespace semchan

#include "semchan/enabling.hpp"

#include <stdexcept>

namespace semchan {

EnablingMap::EnablingMap(std::vector<std::string> in, std::vector<std::string> out,
                         std::map<std::string, std::set<std::string>> allowed_)
    : input_space(std::move(in)), output_space(std::move(out)), allowed(std::move(allowed_)) {
    const std::set<std::string> outs(output_space.begin(), output_space.end());
    std::set<std::string> covered;
    for (const auto& x : input_space) {
        const auto it = allowed.find(x);
        if (it == allowed.end() || it->second.empty())
            throw std::invalid_argument("EnablingMap: input " + x +
                                        " has no allowed outputs (totality)");
        for (const auto& y : it->second) {
            if (!outs.count(y))
                throw std::invalid_argument("EnablingMap: allowed output " + y +
                                            " is outside the output space");
            covered.insert(y);
        }
    }
    if (covered.size() != outs.size())
        throw std::invalid_argument("EnablingMap: allowed sets do not cover the output space");
}

EnablingMap EnablingMap::full(std::vector<std::string> in, std::vector<std::string> out) {
    std::map<std::string, std::set<std::string>> allowed_;
    const std::set<std::string> all(out.begin(), out.end());
    for (const auto& x : in) allowed_[x] = all;
    return EnablingMap(std::move(in), std::move(out), std::move(allowed_));
}

bool EnablingMap::is_full() const {
    for (const auto& x : input_space)
        if (allowed.at(x).size() != output_space.size()) return false;
    return true;
}

EnablingCheck validate_enabling(const Kernel& k, const EnablingMap& e) {
    if (k.input_space != e.input_space || k.output_space != e.output_space)
        throw std::invalid_argument("validate_enabling: spaces differ");
    for (std::size_t i = 0; i < k.input_space.size(); ++i) {
        const auto& allowed = e.allowed.at(k.input_space[i]);
        for (std::size_t j = 0; j < k.output_space.size(); ++j)
            if (k.at(i, j) > 0.0 && !allowed.count(k.output_space[j]))
                return {false, k.input_space[i], k.output_space[j]};
    }
    return {};
}

EnablingMap compose_enabling(const EnablingMap& e1, const EnablingMap& e2) {
    if (e1.output_space != e2.input_space)
        throw std::invalid_argument("compose_enabling: middle spaces differ");
    std::map<std::string, std::set<std::string>> allowed;
    for (const auto& x : e1.input_space) {
        auto& dst = allowed[x];
        for (const auto& y : e1.allowed.at(x)) {
            const auto& t = e2.allowed.at(y);
            dst.insert(t.begin(), t.end());
        }
    }
    return EnablingMap(e1.input_space, e2.output_space, std::move(allowed));
}

} // namespace semchan

#pragma once

// Seeded generators for property tests. KB instances stay inside a Herbrand
// universe of at most 64 ground atoms (2 binary predicates over <= 4
// constants, plus an optional unary one).

#include <random>
#include <string>
#include <vector>

#include "semchan/enabling.hpp"
#include "semchan/kb.hpp"

namespace gen {

inline int rand_int(std::mt19937& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline double rand_real(std::mt19937& g, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline const std::vector<std::string>& consts() {
    static const std::vector<std::string> c = {"a", "b", "c", "d"};
    return c;
}

// Path(X,Y) :- Edge(X,Y).  and  Path(X,Z) :- Edge(X,Y), Path(Y,Z).
inline semchan::ProofSystem path_rules() {
    using semchan::AtomPattern;
    using semchan::Term;
    const Term X{true, "X"}, Y{true, "Y"}, Z{true, "Z"};
    semchan::ProofSystem ps;
    ps.rules.push_back(semchan::Rule::make({"Path", {X, Y}}, {AtomPattern{"Edge", {X, Y}}}));
    ps.rules.push_back(semchan::Rule::make(
        {"Path", {X, Z}}, {AtomPattern{"Edge", {X, Y}}, AtomPattern{"Path", {Y, Z}}}));
    return ps;
}

// Optionally richer systems: a unary projection and path transitivity.
inline semchan::ProofSystem random_ps(std::mt19937& g) {
    using semchan::AtomPattern;
    using semchan::Term;
    const Term X{true, "X"}, Y{true, "Y"}, Z{true, "Z"};
    semchan::ProofSystem ps = path_rules();
    if (rand_int(g, 0, 1))
        ps.rules.push_back(semchan::Rule::make({"Mark", {X}}, {AtomPattern{"Edge", {X, Y}}}));
    if (rand_int(g, 0, 1))
        ps.rules.push_back(semchan::Rule::make(
            {"Path", {X, Z}}, {AtomPattern{"Path", {X, Y}}, AtomPattern{"Path", {Y, Z}}}));
    return ps;
}

// Random subset of Edge/Path facts over {a,b,c,d}; non-empty.
inline semchan::AtomSet random_atoms(std::mt19937& g, double keep = 0.25) {
    semchan::AtomSet out;
    for (const auto& p : {std::string("Edge"), std::string("Path")})
        for (const auto& x : consts())
            for (const auto& y : consts())
                if (rand_real(g) < keep) out.insert({p, {x, y}});
    if (out.empty()) out.insert({"Edge", {"a", "b"}});
    return out;
}

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix) {
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

inline semchan::Distribution random_distribution(std::mt19937& g,
                                                 std::vector<std::string> space) {
    std::vector<double> w(space.size());
    double sum = 0.0;
    for (auto& x : w) {
        x = rand_real(g, 1e-3, 1.0);
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return {std::move(space), std::move(w)};
}

inline semchan::Kernel random_kernel(std::mt19937& g, std::vector<std::string> in,
                                     std::vector<std::string> out) {
    std::vector<double> m;
    m.reserve(in.size() * out.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        std::vector<double> row(out.size());
        double sum = 0.0;
        for (auto& x : row) {
            x = rand_real(g, 1e-3, 1.0);
            sum += x;
        }
        for (double x : row) m.push_back(x / sum);
    }
    return {std::move(in), std::move(out), std::move(m)};
}

// Random enabling map satisfying totality and coverage by construction.
inline semchan::EnablingMap random_enabling(std::mt19937& g, std::vector<std::string> in,
                                            std::vector<std::string> out) {
    std::map<std::string, std::set<std::string>> allowed;
    for (const auto& x : in) {
        auto& s = allowed[x];
        for (const auto& y : out)
            if (rand_real(g) < 0.5) s.insert(y);
        if (s.empty()) s.insert(out[static_cast<std::size_t>(rand_int(g, 0, int(out.size()) - 1))]);
    }
    for (const auto& y : out) {
        bool covered = false;
        for (const auto& x : in) covered = covered || allowed[x].count(y);
        if (!covered) allowed[in[static_cast<std::size_t>(rand_int(g, 0, int(in.size()) - 1))]].insert(y);
    }
    return {std::move(in), std::move(out), std::move(allowed)};
}

// Random kernel whose rows put mass only on the enabling-allowed labels.
inline semchan::Kernel random_kernel_respecting(std::mt19937& g, const semchan::EnablingMap& e) {
    std::vector<double> m;
    m.reserve(e.input_space.size() * e.output_space.size());
    for (const auto& x : e.input_space) {
        const auto& ok = e.allowed.at(x);
        std::vector<double> row(e.output_space.size(), 0.0);
        double sum = 0.0;
        for (std::size_t j = 0; j < e.output_space.size(); ++j)
            if (ok.count(e.output_space[j])) {
                row[j] = rand_real(g, 1e-3, 1.0);
                sum += row[j];
            }
        for (double x2 : row) m.push_back(x2 / sum);
    }
    return {e.input_space, e.output_space, std::move(m)};
}

// Random total-function kernel.
inline semchan::Kernel random_deterministic(std::mt19937& g, std::vector<std::string> in,
                                            std::vector<std::string> out) {
    std::map<std::string, std::string> f;
    for (const auto& x : in) f[x] = out[static_cast<std::size_t>(rand_int(g, 0, int(out.size()) - 1))];
    return semchan::deterministic_kernel(f, std::move(in), std::move(out));
}

} // namespace gen

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semchan/kernel.hpp"

namespace semchan {

// Support constraint for kernels: each input may only emit labels from its
// allowed set. Invariants: totality (every input has a non-empty allowed
// set) and coverage (the allowed sets jointly exhaust the output space).
struct EnablingMap {
    std::vector<std::string> input_space;
    std::vector<std::string> output_space;
    std::map<std::string, std::set<std::string>> allowed;

    EnablingMap(std::vector<std::string> in, std::vector<std::string> out,
                std::map<std::string, std::set<std::string>> allowed_);

    static EnablingMap full(std::vector<std::string> in, std::vector<std::string> out);
    bool is_full() const;
};

// Result of a support check; false carries the first violating pair.
struct EnablingCheck {
    bool ok = true;
    std::string input, output; // set when !ok

    explicit operator bool() const { return ok; }
};

// True iff supp(k(.|x)) ⊆ e.allowed[x] for every input x.
EnablingCheck validate_enabling(const Kernel& k, const EnablingMap& e);

// Allowed sets unioned through the middle space:
// allowed(x) = ∪_{y ∈ e1.allowed[x]} e2.allowed[y].
EnablingMap compose_enabling(const EnablingMap& e1, const EnablingMap& e2);

} // namespace semchan

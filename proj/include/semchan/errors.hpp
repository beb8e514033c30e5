#pragma once

#include <stdexcept>
#include <string>

namespace semchan {

// Syntax or grammar failure while reading a KB or config file.
// line/col are 1-based; col 0 means "whole line".
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line, int col)
        : std::runtime_error(std::move(msg)), line_(line), col_(col) {}
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

// Herbrand-base (or other size) cap exceeded. All fixpoint guarantees assume
// a finite, desk-scale ground universe; refusing loudly beats thrashing.
class guard_error : public std::runtime_error {
public:
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative numerical routine failed to reach its tolerance within the cap.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& msg, double gap)
        : std::runtime_error(msg), gap_(gap) {}
    double gap() const noexcept { return gap_; }

private:
    double gap_;
};

} // namespace semchan

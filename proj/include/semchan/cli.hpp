#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <cstdint>

namespace semchan::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitGuard = 3;
inline constexpr int kExitGoldenMismatch = 4;

struct RunConfig {
    std::string command; // analyze | overlap | invariants | capacity | simulate | example
    std::string kb_path;
    std::vector<std::string> receiver_paths;
    std::string channel_path;
    std::string format = "text"; // json | csv | text
    std::uint64_t seed = 1;
    long trials = 100000;
    std::vector<int> block_lengths = {1, 2, 3, 4};
    double tol = 1e-9;
    std::string data_dir; // for `example`; defaults to the shipped data files
    std::uint64_t guard;  // Herbrand cap; constructor reads SEMCHAN_GUARD

    RunConfig();
};

// Executes one command, writing the report to `out` and errors to `err`.
// Returns one of the exit codes above; never throws.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace semchan::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace polylb {

struct RunConfig {
    std::string command;
    std::string input_path;
    /// Inline JSON input; takes precedence over input_path.
    std::string json_text;
    std::string output_path;
    std::string csv_path;
    int n = 1;
    double eps = 0.25;
    std::uint64_t seed = 1;
    std::int64_t budget = 4000;
    std::int64_t mc_samples = 200000;
    std::int64_t trials = 10000;
    int family_size = 8;
    std::string kind = "theorem0";
    std::vector<double> nodes;
    int samples_per_piece = 8;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;

/// Runs one subcommand, writing JSON to `out` (or config.output_path).
/// Input errors are reported on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to run().
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace polylb

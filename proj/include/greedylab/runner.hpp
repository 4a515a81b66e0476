#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "greedylab/io.hpp"

namespace greedylab {

// Exit code contract shared by the CLI and the runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitAcceptance = 4;

struct RunOptions {
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;  // overrides the config seed
    int jobs = 1;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string summary;                // printed to stdout by the CLI
    std::vector<std::string> outputs;   // files written under out_dir
};

/// Execute one experiment config (already parsed JSON). Writes result files
/// plus manifest.json under opts.out_dir; identical config + seed produce
/// byte-identical result files for any jobs value.
RunResult run_experiment(const io::json& config, const RunOptions& opts);

}  // namespace greedylab

#pragma once

#include <map>
#include <string>
#include <vector>

#include "greedylab/dkk.hpp"

namespace greedylab::repro {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteOutput {
    std::vector<CheckResult> results;
    std::map<std::string, std::string> artifacts;  // filename -> contents
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

/// The reference instance used throughout the reproduction suites:
/// S = l_2, X = difference system in l_{1/2}, block sizes 1, 2, 4, ...
/// dim must be 2^k - 1.
DkkSpace default_dkk(int dim);

std::vector<std::string> suite_names();

/// Named reproduction suite; "acceptance" runs every criterion.
SuiteOutput run_suite(const std::string& suite, int jobs = 1);

/// Runtime property checks over the core modules (the `verify` subcommand).
std::vector<CheckResult> verify_invariants(std::uint64_t seed = 31337);

}  // namespace greedylab::repro

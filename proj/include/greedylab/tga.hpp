#pragma once

#include <span>
#include <vector>

#include "greedylab/core.hpp"
#include "greedylab/rng.hpp"

namespace greedylab {

/// Deterministic tie handling for greedy sets. Verifiers that must honor the
/// "any greedy set" quantifier enumerate instead (all_greedy_sets /
/// greedy_set_family).
enum class TieRule { LowestIndex, HighestIndex };

/// A greedy set of size m: |a_j| >= |a_k| for every j in A, k outside A.
IndexSet greedy_set(std::span<const double> a, int m, TieRule tie = TieRule::LowestIndex);

/// Every greedy set of size m. Throws budget_error when the tie combinations
/// exceed max_sets.
std::vector<IndexSet> all_greedy_sets(std::span<const double> a, int m,
                                      std::uint64_t max_sets = 1u << 20);

/// Greedy sets of size m for search loops: the full enumeration when it fits
/// in the cap, otherwise a deterministic subfamily (lowest/highest ties,
/// alternating tie picks, seeded random picks). Every returned set is valid.
std::vector<IndexSet> greedy_set_family(std::span<const double> a, int m, std::uint64_t cap,
                                        Rng* rng = nullptr);

struct GreedyStep {
    int m;
    IndexSet set;
    double residual;  // ||f - S_{A_m} f|| under the supplied norm
};

struct GreedyRun {
    Vec coefficients;
    TieRule tie;
    std::string normer;
    std::vector<GreedyStep> steps;  // m = 0 .. m_max
};

/// Thresholding greedy algorithm error sequence under a coefficient-side
/// quasi-norm evaluator.
GreedyRun greedy_residual_curve(const NormFn& normer, std::span<const double> a, int m_max,
                                TieRule tie = TieRule::LowestIndex,
                                std::string normer_label = {});

}  // namespace greedylab

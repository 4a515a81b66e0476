#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "greedylab/bases.hpp"
#include "greedylab/core.hpp"

namespace greedylab {

/// Search regime for the parameter suprema. Exhaustive mode enumerates finite
/// grids (subsets, sign patterns, dyadic magnitudes) and is guarded by an
/// evaluation budget; sampled mode is a pure function of (seed, trial index),
/// so reports are identical for any worker count.
struct SearchMode {
    enum class Type { Exhaustive, Sampled };
    Type type = Type::Sampled;
    std::uint64_t budget = 0;  // exhaustive: max norm evaluations
    std::uint64_t trials = 0;  // sampled
    std::uint64_t seed = 0;
    int jobs = 1;

    static SearchMode exhaustive(std::uint64_t budget = enumeration_budget());
    static SearchMode sampled(std::uint64_t trials, std::uint64_t seed, int jobs = 1);
    std::string describe() const;
};

/// How a witness row reproduces its reported value.
enum class WitnessKind {
    NormOfVector,     // normer(f)
    ProjectionRatio,  // normer(S_A f) / normer(f)
    BetaRatio,        // normer(f) / ||f||_q
    EtaRatio,         // ||f||_q / normer(f)
    PairRatio,        // normer(f) / normer(g)
    LebesgueRatio,    // normer(f - S_A f) / normer(f - g)
};

struct WitnessRow {
    long long m = 0;
    double value = 0.0;
    Vec f;
    std::vector<int> set;  // A, 1-based, possibly empty
    Vec g;                 // secondary vector, possibly empty
    std::string note;
};

struct ParamReport {
    std::string name;
    std::string mode;
    WitnessKind kind = WitnessKind::NormOfVector;
    double q = 0.0;  // exponent for beta/eta rows
    std::vector<WitnessRow> rows;
    std::vector<std::pair<std::string, std::vector<double>>> reference;
};

/// Recompute a row's value from its stored witness; reports are only trusted
/// when this matches row.value to 1e-9.
double reevaluate(const ParamReport& report, const WitnessRow& row, const NormFn& normer);
bool verify_witnesses(const ParamReport& report, const NormFn& normer, double tol = 1e-9);

/// Upper and lower super-democracy functions: extremal norms of signed
/// indicator sums over sets of size <= m (resp. >= m, truncated to [1, dim]).
/// Exhaustive mode is exact; sampled mode certifies a lower bound for the
/// upper function and an upper bound for the lower one.
std::pair<ParamReport, ParamReport> democracy_functions(const NormFn& normer, int dim, int m_max,
                                                        const SearchMode& mode);

enum class ConditionalityKind { KTilde, K };

/// Unconditionality parameters. KTilde: sup of ||S_A f||/||f|| over f
/// supported in [1, m] and A inside [1, m]. K: same sup over |A| <= m with f
/// anywhere in [1, dim]. Values are certified lower bounds realized by the
/// stored witnesses; extra_candidates lets callers inject structured starting
/// vectors (e.g. block-constant transfers into a DKK space).
ParamReport conditionality(const NormFn& normer, int dim, int m, ConditionalityKind kind,
                           const SearchMode& mode, double p_banach = 0.0,
                           std::span<const Vec> extra_candidates = {});

enum class EmbeddingKind { Beta, Eta };

/// beta_r[X, q]: sup ||sum a_n x_n|| over ||a||_q = 1, support in [1, r].
/// eta_r[X, q]: sup ||a||_q over ||sum a_n x_n|| = 1.
ParamReport embedding_constant(const BasisRep& basis, int r, double q, EmbeddingKind kind,
                               const SearchMode& mode);

/// Max of ||S_A f|| / ||f|| over seeded samples and every greedy set of every
/// size (tie combinations enumerated up to a cap, then a deterministic
/// subfamily stands in).
ParamReport quasi_greedy_constant(const NormFn& normer, int dim, std::uint64_t trials,
                                  std::uint64_t seed, int jobs = 1);

/// Max of ||S_A f|| / ||f|| over A with |A| > d and b|A| < min A (b = 1,
/// d = 0 is plain asymptotic suppression unconditionality).
ParamReport suppression_constant(const NormFn& normer, int dim, const SearchMode& mode, int b = 1,
                                 int d = 0);

/// Max of ||f|| / ||g|| over sampled pairs with |supp f| no larger than the
/// number of g-coefficients dominating max |f|.
ParamReport threshold_domination(const NormFn& normer, int dim, std::uint64_t trials,
                                 std::uint64_t seed, int jobs = 1);

/// Certified lower bound for the m-th Lebesgue parameter:
/// max ||f - S_A f|| / ||f - g|| over sampled f, greedy A of size m, and
/// m-term g found by support grids and per-coordinate descent.
ParamReport lebesgue_lower(const NormFn& normer, int dim, int m, const SearchMode& mode);

/// sup_m sup_f ||S_[1,m] f|| / ||f||, sampled; the Schauder basis constant.
double basis_constant(const NormFn& normer, int dim, std::uint64_t trials, std::uint64_t seed);

/// sup ||f + g|| / (||f|| + ||g||), sampled; the modulus of concavity.
double concavity_modulus(const NormFn& normer, int dim, std::uint64_t trials, std::uint64_t seed);

/// Dyadic magnitude ladder {0} ∪ {±2^-k : 0 <= k <= levels}.
std::vector<double> dyadic_grid(int levels);

}  // namespace greedylab

#include "greedylab/params.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>

#include "greedylab/rng.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/tga.hpp"

namespace greedylab {

SearchMode SearchMode::exhaustive(std::uint64_t budget) {
    SearchMode m;
    m.type = Type::Exhaustive;
    m.budget = budget;
    return m;
}

SearchMode SearchMode::sampled(std::uint64_t trials, std::uint64_t seed, int jobs) {
    SearchMode m;
    m.type = Type::Sampled;
    m.trials = trials;
    m.seed = seed;
    m.jobs = jobs;
    return m;
}

std::string SearchMode::describe() const {
    std::ostringstream os;
    if (type == Type::Exhaustive)
        os << "exhaustive(budget=" << budget << ")";
    else
        os << "sampled(trials=" << trials << ",seed=" << seed << ")";
    return os.str();
}

std::vector<double> dyadic_grid(int levels) {
    std::vector<double> v{0.0};
    for (int k = 0; k <= levels; ++k) {
        const double mag = std::ldexp(1.0, -k);
        v.push_back(mag);
        v.push_back(-mag);
    }
    return v;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Best {
    double value = kNegInf;
    std::uint64_t order = ~0ull;
    WitnessRow row;

    template <typename MakeRow>
    void offer(double v, std::uint64_t ord, MakeRow&& make) {
        if (!std::isfinite(v)) return;
        if (v > value || (v == value && ord < order)) {
            value = v;
            order = ord;
            row = make();
            row.value = v;
        }
    }

    void absorb(Best&& other) {
        if (other.value > value || (other.value == value && other.order < order))
            *this = std::move(other);
    }
};

// Deterministic chunked trial runner: per-trial work derives everything from
// (seed, t), so the merge in chunk order reproduces the serial result. The
// merge must be idempotent with respect to the initial state, which every
// chunk starts from.
template <typename Acc, typename PerTrial, typename Merge>
Acc run_trials(std::uint64_t trials, int jobs, Acc init, PerTrial per_trial, Merge merge) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || trials < 2) {
        Acc acc = std::move(init);
        for (std::uint64_t t = 0; t < trials; ++t) per_trial(t, acc);
        return acc;
    }
    const std::uint64_t chunk = (trials + jobs - 1) / static_cast<std::uint64_t>(jobs);
    std::vector<std::future<Acc>> futures;
    for (std::uint64_t lo = 0; lo < trials; lo += chunk) {
        const std::uint64_t hi = std::min(trials, lo + chunk);
        futures.push_back(std::async(std::launch::async, [&per_trial, &init, lo, hi]() {
            Acc acc = init;
            for (std::uint64_t t = lo; t < hi; ++t) per_trial(t, acc);
            return acc;
        }));
    }
    std::vector<Acc> chunks;
    for (auto& fut : futures) chunks.push_back(fut.get());
    Acc acc = std::move(init);
    for (auto& part : chunks) merge(acc, std::move(part));
    return acc;
}

Vec sample_coeffs(Rng& rng, int dim, std::uint64_t family) {
    Vec a(dim, 0.0);
    switch (family % 4) {
        case 0:
            for (double& x : a) x = rng.gaussian();
            break;
        case 1:  // dyadic magnitudes with exact repeats
            for (double& x : a) {
                if (rng.uniform() < 0.15) continue;
                x = rng.sign() * std::ldexp(1.0, -static_cast<int>(rng.below(7)));
            }
            break;
        case 2: {  // signed indicator
            const int k = 1 + static_cast<int>(rng.below(dim));
            for (int i = 0; i < k; ++i) a[rng.below(dim)] = rng.sign();
            break;
        }
        default: {  // plateaus: block-constant with exact ties
            int j = 0;
            while (j < dim) {
                const int run = 1 + static_cast<int>(rng.below(4));
                const double v = rng.gaussian();
                for (int i = 0; i < run && j < dim; ++i, ++j) a[j] = v;
            }
            break;
        }
    }
    bool zero = true;
    for (double x : a) zero &= (x == 0.0);
    if (zero) a[0] = 1.0;
    return a;
}

std::vector<int> random_subset(Rng& rng, int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    pool.resize(k);
    return pool;
}

double ratio_sa(const NormFn& normer, std::span<const double> a, double base,
                const std::vector<int>& set, Vec& scratch) {
    scratch.assign(a.size(), 0.0);
    for (int j : set) {
        // indices beyond the stored length hit zero-padded coordinates
        if (j <= static_cast<int>(a.size())) scratch[j - 1] = a[j - 1];
    }
    return normer(scratch) / base;
}

// Greedy in-place maximization of a scale-invariant ratio over coefficient
// perturbations. Deterministic; accepts only strict improvements.
template <typename RatioFn>
double ascend_ratio(const RatioFn& ratio, Vec& a, int passes) {
    double best = ratio(a);
    for (int pass = 0; pass < passes; ++pass) {
        bool changed = false;
        double scale = 0.0;
        for (double x : a) scale = std::max(scale, std::abs(x));
        if (scale == 0.0) scale = 1.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double orig = a[j];
            const double candidates[6] = {orig * 2.0,          orig * 0.5, -orig,
                                          orig + 0.25 * scale, orig - 0.25 * scale, 0.0};
            for (double c : candidates) {
                if (c == orig) continue;
                a[j] = c;
                const double v = ratio(a);
                if (v > best * (1.0 + 1e-12)) {
                    best = v;
                    changed = true;
                } else {
                    a[j] = orig;
                }
                if (a[j] != orig) break;
            }
        }
        if (!changed) break;
    }
    return ratio(a);
}

template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
    if (k == 0) {
        std::vector<int> empty;
        fn(empty);
        return;
    }
    if (k > n) return;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
        fn(pick);
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

std::uint64_t pow_capped(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

// Odometer over grid values^dim; calls fn for every non-zero vector.
template <typename Fn>
void for_each_grid_vector(const std::vector<double>& values, int dim, Fn&& fn) {
    std::vector<int> digit(dim, 0);
    Vec a(dim, values[0]);
    while (true) {
        int i = 0;
        while (i < dim && digit[i] == static_cast<int>(values.size()) - 1) {
            digit[i] = 0;
            a[i] = values[0];
            ++i;
        }
        if (i == dim) break;
        ++digit[i];
        a[i] = values[digit[i]];
        fn(const_cast<const Vec&>(a));
    }
}

}  // namespace

double reevaluate(const ParamReport& report, const WitnessRow& row, const NormFn& normer) {
    switch (report.kind) {
        case WitnessKind::NormOfVector:
            return normer(row.f);
        case WitnessKind::ProjectionRatio: {
            Vec scratch;
            const double base = normer(row.f);
            return ratio_sa(normer, row.f, base, row.set, scratch);
        }
        case WitnessKind::BetaRatio:
            return normer(row.f) / lp_norm(row.f, report.q);
        case WitnessKind::EtaRatio:
            return lp_norm(row.f, report.q) / normer(row.f);
        case WitnessKind::PairRatio:
            return normer(row.f) / normer(row.g);
        case WitnessKind::LebesgueRatio: {
            Vec tail(row.f);
            for (int j : row.set) tail[j - 1] = 0.0;
            Vec diff(row.f);
            for (std::size_t i = 0; i < row.g.size(); ++i) diff[i] -= row.g[i];
            return normer(tail) / normer(diff);
        }
    }
    return 0.0;
}

bool verify_witnesses(const ParamReport& report, const NormFn& normer, double tol) {
    for (const auto& row : report.rows) {
        if (row.note == "analytic") continue;
        if (!rel_close(reevaluate(report, row, normer), row.value, tol)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// democracy
// ---------------------------------------------------------------------------

namespace {

struct CardTables {
    std::vector<Best> upper;         // per cardinality, maximizing
    std::vector<Best> lower;         // per cardinality, minimizing (stores -norm)
    explicit CardTables(int dim) : upper(dim + 1), lower(dim + 1) {}

    void offer(int card, double v, std::uint64_t ord, const Vec& f) {
        upper[card].offer(v, ord, [&] {
            WitnessRow r;
            r.m = card;
            r.f = f;
            return r;
        });
        lower[card].offer(-v, ord, [&] {
            WitnessRow r;
            r.m = card;
            r.f = f;
            return r;
        });
    }

    void merge(CardTables&& other) {
        for (std::size_t k = 0; k < upper.size(); ++k) {
            upper[k].absorb(std::move(other.upper[k]));
            lower[k].absorb(std::move(other.lower[k]));
        }
    }
};

}  // namespace

std::pair<ParamReport, ParamReport> democracy_functions(const NormFn& normer, int dim, int m_max,
                                                        const SearchMode& mode) {
    if (m_max < 1 || m_max > dim) throw validation_error("democracy: m_max out of range");
    CardTables tables(dim);

    if (mode.type == SearchMode::Type::Exhaustive) {
        const std::uint64_t total = pow_capped(3, dim, mode.budget);
        if (total > mode.budget)
            throw budget_error("democracy: 3^dim sign-support patterns exceed the budget");
        // Odometer over {0, +1, -1}^dim; every (A, eps) pair is visited once.
        std::vector<int> trit(dim, 0);
        Vec f(dim, 0.0);
        static const double kVals[3] = {0.0, 1.0, -1.0};
        int card = 0;
        std::uint64_t ord = 0;
        while (true) {
            int i = 0;
            while (i < dim && trit[i] == 2) {
                trit[i] = 0;
                f[i] = 0.0;
                --card;
                ++i;
            }
            if (i == dim) break;
            if (trit[i] == 0) ++card;
            ++trit[i];
            f[i] = kVals[trit[i]];
            tables.offer(card, normer(f), ord++, f);
        }
    } else {
        auto per_trial = [&](std::uint64_t t, CardTables& acc) {
            Rng rng = Rng::for_trial(mode.seed, t);
            const int k = 1 + static_cast<int>(rng.below(dim));
            Vec f(dim, 0.0);
            for (int j : random_subset(rng, dim, k)) f[j - 1] = rng.sign();
            acc.offer(k, normer(f), t, f);
        };
        tables = run_trials(mode.trials, mode.jobs, std::move(tables), per_trial,
                            [](CardTables& a, CardTables&& b) { a.merge(std::move(b)); });
    }

    ParamReport upper, lower;
    upper.name = "phi_u_s";
    lower.name = "phi_l_s";
    upper.kind = lower.kind = WitnessKind::NormOfVector;
    upper.mode = mode.describe();
    lower.mode = mode.describe() + (mode.type == SearchMode::Type::Sampled
                                        ? " [upper bound of an infimum]"
                                        : " [inf truncated to A within [1,dim]]");
    for (int m = 1; m <= m_max; ++m) {
        Best bu;
        for (int k = 1; k <= m; ++k) bu.absorb(Best(tables.upper[k]));
        if (bu.value > kNegInf) {
            WitnessRow row = bu.row;
            row.m = m;
            upper.rows.push_back(std::move(row));
        }
        Best bl;
        for (int k = dim; k >= m; --k) bl.absorb(Best(tables.lower[k]));
        if (bl.value > kNegInf) {
            WitnessRow row = bl.row;
            row.m = m;
            row.value = -bl.value;
            lower.rows.push_back(std::move(row));
        }
    }
    return {std::move(upper), std::move(lower)};
}

// ---------------------------------------------------------------------------
// conditionality
// ---------------------------------------------------------------------------

namespace {

// Unions of equal-magnitude index groups. For vectors with exact ties
// (plateaus, block-constant lifts into a DKK space) these are the sets that
// respect the tie structure, and they carry the extremal projections.
std::vector<std::vector<int>> level_union_sets(const Vec& a, std::size_t max_groups) {
    std::vector<std::pair<double, int>> tagged;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0.0) tagged.emplace_back(std::abs(a[j]), static_cast<int>(j + 1));
    std::sort(tagged.begin(), tagged.end());
    std::vector<std::vector<int>> groups;
    for (const auto& [mag, idx] : tagged) {
        if (groups.empty() || mag != std::abs(a[groups.back().front() - 1]))
            groups.push_back({idx});
        else
            groups.back().push_back(idx);
    }
    std::vector<std::vector<int>> sets;
    if (groups.empty() || groups.size() > max_groups) return sets;
    for (std::uint64_t mask = 1; mask < (1ull << groups.size()); ++mask) {
        std::vector<int> set;
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (mask & (1ull << g)) set.insert(set.end(), groups[g].begin(), groups[g].end());
        std::sort(set.begin(), set.end());
        sets.push_back(std::move(set));
    }
    return sets;
}

std::vector<std::vector<int>> structured_subsets(int m, Rng* rng, int random_count) {
    std::vector<std::vector<int>> sets;
    std::vector<int> odds, evens;
    for (int j = 1; j <= m; j += 2) odds.push_back(j);
    for (int j = 2; j <= m; j += 2) evens.push_back(j);
    if (!odds.empty()) sets.push_back(odds);
    if (!evens.empty()) sets.push_back(evens);
    for (int j = 1; j <= m; ++j) {
        sets.push_back({j});
        std::vector<int> prefix;
        for (int i = 1; i <= j; ++i) prefix.push_back(i);
        sets.push_back(prefix);
        std::vector<int> suffix;
        for (int i = j; i <= m; ++i) suffix.push_back(i);
        sets.push_back(suffix);
    }
    if (rng) {
        for (int c = 0; c < random_count; ++c) {
            const int k = 1 + static_cast<int>(rng->below(m));
            sets.push_back(random_subset(*rng, m, k));
        }
    }
    return sets;
}

// Best ratio ||S_A a|| / ||a|| over the listed sets.
template <typename OnBest>
void scan_sets(const NormFn& normer, const Vec& a, const std::vector<std::vector<int>>& sets,
               std::uint64_t ord, Vec& scratch, OnBest&& on_best) {
    const double base = normer(a);
    if (!(base > 0.0)) return;
    for (const auto& set : sets) {
        const double r = ratio_sa(normer, a, base, set, scratch);
        on_best(r, ord, set);
    }
}

}  // namespace

ParamReport conditionality(const NormFn& normer, int dim, int m, ConditionalityKind kind,
                           const SearchMode& mode, double p_banach,
                           std::span<const Vec> extra_candidates) {
    if (m < 1 || m > dim) throw validation_error("conditionality: m out of range");
    const int support = kind == ConditionalityKind::KTilde ? m : dim;
    for (const Vec& a : extra_candidates)
        if (static_cast<int>(a.size()) > support)
            throw validation_error("conditionality: candidate leaves the admissible span");
    Best best;
    Vec scratch;

    auto offer = [&](double r, std::uint64_t ord, const Vec& a, const std::vector<int>& set,
                     const char* note) {
        best.offer(r, ord, [&] {
            WitnessRow row;
            row.m = m;
            row.f = a;
            row.set = set;
            row.note = note;
            return row;
        });
    };

    if (mode.type == SearchMode::Type::Exhaustive) {
        // Subsets to test against every coefficient vector.
        std::vector<std::vector<int>> sets;
        if (kind == ConditionalityKind::KTilde) {
            if (m > 24) throw budget_error("conditionality: 2^m subsets exceed any budget");
            for (std::uint64_t mask = 1; mask < (1ull << m); ++mask) {
                std::vector<int> set;
                for (int j = 0; j < m; ++j)
                    if (mask & (1ull << j)) set.push_back(j + 1);
                sets.push_back(std::move(set));
            }
        } else {
            std::uint64_t count = 0;
            for (int k = 1; k <= m; ++k) {
                std::uint64_t c = 1;
                for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(dim - k + i) / i;
                count += c;
                if (count > mode.budget)
                    throw budget_error("conditionality: subset family exceeds the budget");
            }
            for (int k = 1; k <= m; ++k)
                for_each_combination(dim, k, [&](const std::vector<int>& pick) {
                    sets.push_back(pick);
                });
        }
        // Dyadic grid sized to the budget.
        int levels = 6;
        while (levels > 0 &&
               pow_capped(2 * levels + 3, support, mode.budget) * (sets.size() + 1) > mode.budget)
            --levels;
        if (pow_capped(2 * levels + 3, support, mode.budget) * (sets.size() + 1) > mode.budget)
            throw budget_error("conditionality: coefficient grid exceeds the budget");
        std::uint64_t ord = 0;
        for_each_grid_vector(dyadic_grid(levels), support, [&](const Vec& a) {
            const double base = normer(a);
            ++ord;
            if (!(base > 0.0)) return;
            for (const auto& set : sets) {
                const double r = ratio_sa(normer, a, base, set, scratch);
                offer(r, ord, a, set, "grid");
            }
        });
        for (const Vec& a : extra_candidates) {
            const double base = normer(a);
            ++ord;
            if (!(base > 0.0)) continue;
            for (const auto& set : sets) {
                const double r = ratio_sa(normer, a, base, set, scratch);
                offer(r, ord, a, set, "candidate");
            }
        }
    } else {
        auto sets_for = [&](const Vec& a, Rng* rng) {
            std::vector<std::vector<int>> sets = structured_subsets(support, rng, rng ? 8 : 0);
            for (auto& s : level_union_sets(a, 10)) sets.push_back(std::move(s));
            if (kind == ConditionalityKind::K) {
                std::vector<std::vector<int>> trimmed;
                for (auto& s : sets)
                    if (static_cast<int>(s.size()) <= m) trimmed.push_back(std::move(s));
                if (rng)
                    for (int c = 0; c < 8; ++c) {
                        const int k = 1 + static_cast<int>(rng->below(m));
                        trimmed.push_back(random_subset(*rng, dim, k));
                    }
                sets = std::move(trimmed);
            }
            return sets;
        };
        auto per_trial = [&](std::uint64_t t, Best& acc) {
            Rng rng = Rng::for_trial(mode.seed, t);
            const Vec a = sample_coeffs(rng, support, t);
            Vec local_scratch;
            scan_sets(normer, a, sets_for(a, &rng), t, local_scratch,
                      [&](double r, std::uint64_t ord, const std::vector<int>& set) {
                          acc.offer(r, ord, [&] {
                              WitnessRow row;
                              row.m = m;
                              row.f = a;
                              row.set = set;
                              row.note = "sampled";
                              return row;
                          });
                      });
        };
        // Structured candidates first: the all-ones vector and injected extras.
        {
            Vec ones(support, 1.0);
            scan_sets(normer, ones, sets_for(ones, nullptr), 0, scratch,
                      [&](double r, std::uint64_t ord, const std::vector<int>& set) {
                          offer(r, ord, ones, set, "ones");
                      });
            for (const Vec& a : extra_candidates)
                scan_sets(normer, a, sets_for(a, nullptr), 0, scratch,
                          [&](double r, std::uint64_t ord, const std::vector<int>& set) {
                              offer(r, ord, a, set, "candidate");
                          });
        }
        best = run_trials(mode.trials, mode.jobs, std::move(best), per_trial,
                          [](Best& a, Best&& b) { a.absorb(std::move(b)); });
    }

    // Polish the winning coefficients with the winning set fixed.
    if (best.value > kNegInf && !best.row.set.empty()) {
        Vec a = best.row.f;
        const std::vector<int> set = best.row.set;
        auto ratio = [&](const Vec& x) -> double {
            const double base = normer(x);
            if (!(base > 0.0)) return kNegInf;
            Vec sc;
            return ratio_sa(normer, x, base, set, sc);
        };
        const double refined = ascend_ratio(ratio, a, 4);
        offer(refined, best.order, a, set, "ascent");
    }

    ParamReport report;
    report.name = kind == ConditionalityKind::KTilde ? "k_tilde" : "k";
    report.mode = mode.describe();
    report.kind = WitnessKind::ProjectionRatio;
    if (best.value > kNegInf) report.rows.push_back(best.row);
    if (p_banach > 0.0) {
        report.reference.emplace_back(
            "ceiling_m^(1/p)", std::vector<double>{std::pow(static_cast<double>(m), 1.0 / p_banach)});
    }
    return report;
}

// ---------------------------------------------------------------------------
// embedding constants
// ---------------------------------------------------------------------------

ParamReport embedding_constant(const BasisRep& basis, int r, double q, EmbeddingKind kind,
                               const SearchMode& mode) {
    if (r < 1 || r > basis.dim()) throw validation_error("embedding_constant: r out of range");
    (void)Exponent(q);
    const NormFn normer = basis.norm_fn();
    auto ratio = [&](std::span<const double> a) -> double {
        const double seq = lp_norm(a, q);
        const double bas = normer(a);
        if (!(seq > 0.0) || !(bas > 0.0)) return kNegInf;
        return kind == EmbeddingKind::Beta ? bas / seq : seq / bas;
    };

    Best best;
    auto offer = [&](const Vec& a, std::uint64_t ord, const char* note) {
        best.offer(ratio(a), ord, [&] {
            WitnessRow row;
            row.m = r;
            row.f = a;
            row.note = note;
            return row;
        });
    };

    // Closed-form extremal candidates: spikes, constants, prefix indicators.
    Vec spike(r, 0.0);
    spike[r - 1] = 1.0;
    offer(spike, 0, "spike");
    spike.assign(r, 0.0);
    spike[0] = 1.0;
    offer(spike, 0, "spike");
    offer(Vec(r, 1.0), 0, "constant");
    for (int j = 1; j <= r; ++j) {
        Vec prefix(r, 0.0);
        std::fill(prefix.begin(), prefix.begin() + j, 1.0);
        offer(prefix, 0, "prefix-indicator");
    }

    if (mode.type == SearchMode::Type::Exhaustive) {
        int levels = 6;
        while (levels > 0 && pow_capped(2 * levels + 3, r, mode.budget) > mode.budget) --levels;
        if (pow_capped(2 * levels + 3, r, mode.budget) > mode.budget)
            throw budget_error("embedding_constant: grid exceeds the budget");
        std::uint64_t ord = 1;
        for_each_grid_vector(dyadic_grid(levels), r, [&](const Vec& a) { offer(a, ++ord, "grid"); });
    } else {
        auto per_trial = [&](std::uint64_t t, Best& acc) {
            Rng rng = Rng::for_trial(mode.seed, t);
            Vec a = sample_coeffs(rng, r, t);
            acc.offer(ratio(a), t + 1, [&] {
                WitnessRow row;
                row.m = r;
                row.f = a;
                row.note = "sampled";
                return row;
            });
        };
        best = run_trials(mode.trials, mode.jobs, std::move(best), per_trial,
                          [](Best& a, Best&& b) { a.absorb(std::move(b)); });
    }

    if (best.value > kNegInf) {
        Vec a = best.row.f;
        const double refined = ascend_ratio(ratio, a, 4);
        best.offer(refined, best.order, [&] {
            WitnessRow row;
            row.m = r;
            row.f = a;
            row.note = "ascent";
            return row;
        });
    }

    ParamReport report;
    report.name = kind == EmbeddingKind::Beta ? "beta" : "eta";
    report.mode = mode.describe();
    report.kind = kind == EmbeddingKind::Beta ? WitnessKind::BetaRatio : WitnessKind::EtaRatio;
    report.q = q;
    if (best.value > kNegInf) report.rows.push_back(best.row);
    return report;
}

// ---------------------------------------------------------------------------
// quasi-greedy constant
// ---------------------------------------------------------------------------

namespace {

// Max over every greedy set of every size for one coefficient vector.
void scan_greedy_sets(const NormFn& normer, const Vec& a, std::uint64_t ord, Rng& rng, Best& acc,
                      const char* note) {
    const double base = normer(a);
    if (!(base > 0.0)) return;
    Vec scratch;
    for (int m = 1; m <= static_cast<int>(a.size()); ++m) {
        for (const IndexSet& set : greedy_set_family(a, m, 24, &rng)) {
            const double r = ratio_sa(normer, a, base, set.indices(), scratch);
            acc.offer(r, ord, [&] {
                WitnessRow row;
                row.m = m;
                row.f = a;
                row.set = set.indices();
                row.note = note;
                return row;
            });
        }
    }
}

}  // namespace

ParamReport quasi_greedy_constant(const NormFn& normer, int dim, std::uint64_t trials,
                                  std::uint64_t seed, int jobs) {
    if (dim < 1) throw validation_error("quasi_greedy_constant: dim must be >= 1");
    Best best;
    // Deterministic structured samples: prefix indicators hit the conditional
    // witnesses that random draws essentially never find.
    {
        std::uint64_t pre = 0;
        for (int k = 1; k <= dim; k = k < dim && 2 * k > dim ? dim : 2 * k) {
            Vec a(dim, 0.0);
            std::fill(a.begin(), a.begin() + k, 1.0);
            Rng rng = Rng::for_trial(seed, 0xabcdef00ull + static_cast<std::uint64_t>(k));
            scan_greedy_sets(normer, a, pre++, rng, best, "prefix-indicator");
            if (k == dim) break;
        }
    }
    auto per_trial = [&](std::uint64_t t, Best& acc) {
        Rng rng = Rng::for_trial(seed, t);
        const Vec a = sample_coeffs(rng, dim, t);
        scan_greedy_sets(normer, a, t + 16, rng, acc, "sampled");
    };
    best = run_trials(trials, jobs, std::move(best), per_trial,
                      [](Best& a, Best&& b) { a.absorb(std::move(b)); });

    ParamReport report;
    report.name = "quasi_greedy_constant";
    report.mode = "sampled(trials=" + std::to_string(trials) + ",seed=" + std::to_string(seed) +
                  ") over all greedy sets";
    report.kind = WitnessKind::ProjectionRatio;
    if (best.value > kNegInf) report.rows.push_back(best.row);
    return report;
}

// ---------------------------------------------------------------------------
// asymptotic suppression
// ---------------------------------------------------------------------------

namespace {

// All A with |A| > d and b|A| < min A, exhaustively when that family is small
// and a structured subfamily (intervals, strides, seeded picks) otherwise.
std::vector<std::vector<int>> admissible_tail_sets(int dim, int b, int d, std::uint64_t cap,
                                                   std::uint64_t seed) {
    std::uint64_t count = 0;
    for (int j = 1; j <= dim; ++j) {
        const int max_size = std::min((j - 1) / std::max(1, b), dim - j + 1);
        for (int s = d + 1; s <= max_size; ++s) {
            std::uint64_t c = 1;
            for (int i = 1; i <= s - 1; ++i) {
                c = c * static_cast<std::uint64_t>(dim - j - i + 1) / i;
                if (c > cap) break;
            }
            count += c;
            if (count > cap) break;
        }
        if (count > cap) break;
    }

    std::vector<std::vector<int>> sets;
    if (count <= cap) {
        for (int j = 1; j <= dim; ++j) {
            const int max_size = std::min((j - 1) / std::max(1, b), dim - j + 1);
            for (int s = d + 1; s <= max_size; ++s) {
                for_each_combination(dim - j, s - 1, [&](const std::vector<int>& rest) {
                    std::vector<int> set{j};
                    for (int v : rest) set.push_back(j + v);
                    sets.push_back(std::move(set));
                });
            }
        }
        return sets;
    }
    Rng rng(seed ^ 0x5e7f00dull);
    for (int j = 1; j <= dim; ++j) {
        const int max_size = std::min((j - 1) / std::max(1, b), dim - j + 1);
        for (int s = d + 1; s <= max_size; ++s) {
            std::vector<int> interval;
            for (int i = 0; i < s; ++i) interval.push_back(j + i);
            sets.push_back(interval);
            std::vector<int> stride;
            for (int i = 0; i < s && j + 2 * i <= dim; ++i) stride.push_back(j + 2 * i);
            if (static_cast<int>(stride.size()) == s) sets.push_back(stride);
            std::vector<int> pick{j};
            for (int v : random_subset(rng, dim - j, s - 1)) pick.push_back(j + v);
            sets.push_back(pick);
        }
    }
    return sets;
}

}  // namespace

ParamReport suppression_constant(const NormFn& normer, int dim, const SearchMode& mode, int b,
                                 int d) {
    if (dim < 2) throw validation_error("suppression_constant: dim must be >= 2");
    const std::uint64_t seed = mode.type == SearchMode::Type::Sampled ? mode.seed : 1;
    const std::uint64_t trials = mode.type == SearchMode::Type::Sampled ? mode.trials : 2000;
    const std::vector<std::vector<int>> sets = admissible_tail_sets(dim, b, d, 20000, seed);

    Best best;
    auto scan = [&](const Vec& a, std::uint64_t ord, const char* note, Best& acc) {
        const double base = normer(a);
        if (!(base > 0.0)) return;
        Vec local;
        for (const auto& set : sets) {
            const double r = ratio_sa(normer, a, base, set, local);
            acc.offer(r, ord, [&] {
                WitnessRow row;
                row.m = static_cast<long long>(set.size());
                row.f = a;
                row.set = set;
                row.note = note;
                return row;
            });
        }
    };
    for (int k = 1; k <= dim; ++k) {  // every e_k in the conditional basis image
        Vec a(dim, 0.0);
        std::fill(a.begin(), a.begin() + k, 1.0);
        scan(a, 0, "prefix-indicator", best);
    }
    auto per_trial = [&](std::uint64_t t, Best& acc) {
        Rng rng = Rng::for_trial(seed, t);
        scan(sample_coeffs(rng, dim, t), t + 1, "sampled", acc);
    };
    best = run_trials(trials, mode.jobs, std::move(best), per_trial,
                      [](Best& a, Best&& b2) { a.absorb(std::move(b2)); });

    ParamReport report;
    report.name = "suppression_constant";
    std::ostringstream os;
    os << mode.describe() << " sets(|A|>" << d << ", " << b << "|A|<min A; " << sets.size()
       << " enumerated)";
    report.mode = os.str();
    report.kind = WitnessKind::ProjectionRatio;
    if (best.value > kNegInf) report.rows.push_back(best.row);
    return report;
}

// ---------------------------------------------------------------------------
// threshold domination (squeeze-symmetry shadow)
// ---------------------------------------------------------------------------

ParamReport threshold_domination(const NormFn& normer, int dim, std::uint64_t trials,
                                 std::uint64_t seed, int jobs) {
    if (dim < 1) throw validation_error("threshold_domination: dim must be >= 1");
    auto per_trial = [&](std::uint64_t t, Best& acc) {
        Rng rng = Rng::for_trial(seed, t);
        const Vec g = sample_coeffs(rng, dim, t);
        std::vector<double> mags(dim);
        for (int i = 0; i < dim; ++i) mags[i] = std::abs(g[i]);
        std::sort(mags.begin(), mags.end(), std::greater<double>());
        const int k = 1 + static_cast<int>(rng.below(dim));
        const double tau = mags[k - 1];
        if (!(tau > 0.0)) return;
        int count = 0;
        for (double v : mags) count += (v >= tau);
        const int s = 1 + static_cast<int>(rng.below(count));
        Vec f(dim, 0.0);
        const std::vector<int> support = random_subset(rng, dim, s);
        for (int j : support) f[j - 1] = (2.0 * rng.uniform() - 1.0) * tau;
        f[support[0] - 1] = rng.sign() * tau;  // attain max |f| = tau exactly
        const double den = normer(g);
        if (!(den > 0.0)) return;
        acc.offer(normer(f) / den, t, [&] {
            WitnessRow row;
            row.m = s;
            row.f = f;
            row.g = g;
            row.note = "sampled";
            return row;
        });
    };
    Best best = run_trials(trials, jobs, Best{}, per_trial,
                           [](Best& a, Best&& b) { a.absorb(std::move(b)); });

    ParamReport report;
    report.name = "threshold_domination";
    report.mode = "sampled(trials=" + std::to_string(trials) + ",seed=" + std::to_string(seed) + ")";
    report.kind = WitnessKind::PairRatio;
    if (best.value > kNegInf) report.rows.push_back(best.row);
    return report;
}

// ---------------------------------------------------------------------------
// Lebesgue parameter lower bound
// ---------------------------------------------------------------------------

namespace {

// Minimize ||f - g|| over the coefficients of g on a fixed support, starting
// from interpolation (g = f on the support).
double descend_denominator(const NormFn& normer, const Vec& f, const std::vector<int>& support,
                           Vec& g_out) {
    Vec g(f.size(), 0.0);
    for (int j : support) g[j - 1] = f[j - 1];
    Vec diff(f);
    for (int j : support) diff[j - 1] = 0.0;
    double best = normer(diff);
    double scale = 0.0;
    for (double x : f) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;
    for (int pass = 0; pass < 3; ++pass) {
        bool changed = false;
        for (int j : support) {
            const double orig = g[j - 1];
            for (double step : {0.5 * scale, 0.25 * scale, 0.125 * scale}) {
                for (double cand : {orig + step, orig - step}) {
                    g[j - 1] = cand;
                    for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - g[i];
                    const double v = normer(diff);
                    if (v < best * (1.0 - 1e-12)) {
                        best = v;
                        changed = true;
                        break;
                    }
                    g[j - 1] = orig;
                }
                if (g[j - 1] != orig) break;
            }
        }
        if (!changed) break;
    }
    g_out = std::move(g);
    return best;
}

}  // namespace

ParamReport lebesgue_lower(const NormFn& normer, int dim, int m, const SearchMode& mode) {
    if (m < 0 || m >= dim) throw validation_error("lebesgue_lower: need 0 <= m < dim");
    ParamReport report;
    report.name = "lebesgue_lower";
    report.mode = mode.describe();
    report.kind = WitnessKind::LebesgueRatio;

    if (m == 0) {
        WitnessRow row;
        row.m = 0;
        row.f = Vec{1.0};
        row.g = Vec{};
        row.value = 1.0;
        row.note = "empty projection";
        report.rows.push_back(std::move(row));
        return report;
    }

    // Candidate m-term supports for the competitor g.
    auto candidate_supports = [&](const Vec& f, const std::vector<int>& greedy,
                                  Rng* rng) -> std::vector<std::vector<int>> {
        std::vector<std::vector<int>> supports{greedy};
        for (int j = 1; j + m - 1 <= dim; ++j) {
            std::vector<int> window;
            for (int i = 0; i < m; ++i) window.push_back(j + i);
            supports.push_back(std::move(window));
        }
        (void)f;
        if (rng)
            for (int c = 0; c < 4; ++c) supports.push_back(random_subset(*rng, dim, m));
        return supports;
    };

    auto examine = [&](const Vec& f, std::uint64_t ord, Rng* rng, Best& acc, const char* note) {
        Vec tail(dim, 0.0);
        Rng tie_rng = Rng::for_trial(0x9e11ull, ord);
        for (const IndexSet& set : greedy_set_family(f, m, 12, rng ? rng : &tie_rng)) {
            for (std::size_t i = 0; i < f.size(); ++i) tail[i] = f[i];
            for (int j : set) tail[j - 1] = 0.0;
            const double num = normer(tail);
            if (!(num > 0.0)) continue;
            for (const auto& support : candidate_supports(f, set.indices(), rng)) {
                Vec g;
                const double den = descend_denominator(normer, f, support, g);
                if (!(den > 0.0)) continue;
                acc.offer(num / den, ord, [&] {
                    WitnessRow row;
                    row.m = m;
                    row.f = f;
                    row.set = set.indices();
                    row.g = g;
                    row.note = note;
                    return row;
                });
            }
        }
    };

    Best best;
    for (int k = m + 1; k <= std::min(dim, m + 8); ++k) {
        Vec f(dim, 0.0);
        std::fill(f.begin(), f.begin() + k, 1.0);
        examine(f, 0, nullptr, best, "prefix-indicator");
    }
    const std::uint64_t trials = mode.type == SearchMode::Type::Sampled ? mode.trials : 500;
    const std::uint64_t seed = mode.type == SearchMode::Type::Sampled ? mode.seed : 1;
    auto per_trial = [&](std::uint64_t t, Best& acc) {
        Rng rng = Rng::for_trial(seed, t);
        const Vec f = sample_coeffs(rng, dim, t);
        examine(f, t + 1, &rng, acc, "sampled");
    };
    best = run_trials(trials, mode.jobs, std::move(best), per_trial,
                      [](Best& a, Best&& b) { a.absorb(std::move(b)); });
    if (best.value > kNegInf) report.rows.push_back(best.row);
    return report;
}

// ---------------------------------------------------------------------------
// auxiliary measured constants
// ---------------------------------------------------------------------------

double basis_constant(const NormFn& normer, int dim, std::uint64_t trials, std::uint64_t seed) {
    double best = 1.0;  // S_[1,dim] is the identity
    Vec prefix(dim, 0.0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        const Vec a = sample_coeffs(rng, dim, t);
        const double base = normer(a);
        if (!(base > 0.0)) continue;
        std::copy(a.begin(), a.end(), prefix.begin());
        for (int mm = dim - 1; mm >= 1; --mm) {
            prefix[mm] = 0.0;
            best = std::max(best, normer(prefix) / base);
        }
    }
    return best;
}

double concavity_modulus(const NormFn& normer, int dim, std::uint64_t trials, std::uint64_t seed) {
    double best = 0.0;
    Vec sum(dim, 0.0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::for_trial(seed, t);
        const Vec f = sample_coeffs(rng, dim, t);
        const Vec g = t % 5 == 0 ? f : sample_coeffs(rng, dim, t + 1);
        const double nf = normer(f), ng = normer(g);
        if (!(nf + ng > 0.0)) continue;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f[i] + g[i];
        best = std::max(best, normer(sum) / (nf + ng));
    }
    return best;
}

}  // namespace greedylab

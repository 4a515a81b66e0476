#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "greedylab/rng.hpp"
#include "greedylab/spaces.hpp"
#include "greedylab/tga.hpp"

using namespace greedylab;

namespace {

// Brute force: every m-subset satisfying the threshold inequality.
std::vector<std::vector<int>> brute_force_greedy_sets(const Vec& a, int m) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        if (__builtin_popcountll(mask) != m) continue;
        double in_min = kInf, out_max = 0.0;
        std::vector<int> set;
        for (int j = 0; j < n; ++j) {
            const double v = std::abs(a[j]);
            if (mask & (1ull << j)) {
                in_min = std::min(in_min, v);
                set.push_back(j + 1);
            } else {
                out_max = std::max(out_max, v);
            }
        }
        if (in_min >= out_max) out.push_back(std::move(set));
    }
    return out;
}

}  // namespace

TEST_CASE("greedy set selection") {
    const Vec a{3.0, -5.0, 2.0};
    CHECK(greedy_set(a, 1).indices() == std::vector<int>{2});
    CHECK(greedy_set(a, 2).indices() == std::vector<int>{1, 2});
    CHECK(greedy_set(a, 0).empty());
    CHECK_THROWS_AS(greedy_set(a, 4), validation_error);

    const Vec ties{1.0, 1.0};
    CHECK(greedy_set(ties, 1, TieRule::LowestIndex).indices() == std::vector<int>{1});
    CHECK(greedy_set(ties, 1, TieRule::HighestIndex).indices() == std::vector<int>{2});
    const auto all = all_greedy_sets(ties, 1);
    REQUIRE(all.size() == 2);
    CHECK(all[0].indices() == std::vector<int>{1});
    CHECK(all[1].indices() == std::vector<int>{2});
}

TEST_CASE("exhaustive tie coverage matches brute force") {
    Rng rng(41);
    for (int t = 0; t < 200; ++t) {
        const int n = 3 + static_cast<int>(rng.below(10));  // up to 12 coordinates
        Vec a(n);
        for (double& x : a) x = rng.sign() * std::ldexp(1.0, -static_cast<int>(rng.below(3)));
        for (int m = 0; m <= n; ++m) {
            auto got = all_greedy_sets(a, m, 1u << 16);
            auto want = brute_force_greedy_sets(a, m);
            auto key = [](const IndexSet& s) { return s.indices(); };
            std::vector<std::vector<int>> got_keys;
            for (const auto& s : got) got_keys.push_back(key(s));
            std::sort(got_keys.begin(), got_keys.end());
            std::sort(want.begin(), want.end());
            REQUIRE(got_keys == want);
        }
    }
}

TEST_CASE("greedy set family members are always valid") {
    Rng rng(47);
    for (int t = 0; t < 200; ++t) {
        Vec a(20);
        for (double& x : a) x = rng.sign() * std::ldexp(1.0, -static_cast<int>(rng.below(2)));
        const int m = 1 + static_cast<int>(rng.below(20));
        for (const IndexSet& set : greedy_set_family(a, m, 8, &rng)) {
            REQUIRE(static_cast<int>(set.size()) == m);
            double in_min = kInf, out_max = 0.0;
            for (int j = 1; j <= 20; ++j) {
                const double v = std::abs(a[j - 1]);
                if (set.contains(j))
                    in_min = std::min(in_min, v);
                else
                    out_max = std::max(out_max, v);
            }
            CHECK(in_min >= out_max);
        }
    }
}

TEST_CASE("residual curve") {
    const SpaceSpec l2 = SpaceSpec::lp(2.0, 2);
    const NormFn normer = [l2](std::span<const double> f) { return l2.norm(f); };
    const GreedyRun run = greedy_residual_curve(normer, Vec{3.0, 4.0}, 2);
    REQUIRE(run.steps.size() == 3);
    CHECK(run.steps[0].residual == doctest::Approx(5.0));
    CHECK(run.steps[1].residual == doctest::Approx(3.0));  // removes the 4
    CHECK(run.steps[1].set.indices() == std::vector<int>{2});
    CHECK(run.steps[2].residual == doctest::Approx(0.0));

    // nonincreasing residuals equal to the sorted tail for l_p unit vectors
    const SpaceSpec lp = SpaceSpec::lp(0.5, 12);
    const NormFn half = [lp](std::span<const double> f) { return lp.norm(f); };
    Rng rng(53);
    for (int t = 0; t < 100; ++t) {
        Vec a(12);
        for (double& x : a) x = rng.gaussian();
        const GreedyRun curve = greedy_residual_curve(half, a, 12);
        Vec mags(12);
        for (int i = 0; i < 12; ++i) mags[i] = std::abs(a[i]);
        std::sort(mags.begin(), mags.end(), std::greater<double>());
        for (int m = 0; m <= 12; ++m) {
            double tail = 0.0;
            for (int i = m; i < 12; ++i) tail += std::sqrt(mags[i]);
            CHECK(curve.steps[m].residual == doctest::Approx(tail * tail).epsilon(1e-12));
            if (m > 0) CHECK(curve.steps[m].residual <= curve.steps[m - 1].residual * (1 + 1e-12));
        }
    }
}

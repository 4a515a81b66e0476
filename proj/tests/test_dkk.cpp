#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "greedylab/dkk.hpp"
#include "greedylab/reproduce.hpp"
#include "greedylab/rng.hpp"

using namespace greedylab;

namespace {

// Step-by-step evaluation of the quasi-norm definition, independent of
// DkkSpace::norm: block means by hand, l_2 of the flat part, l_1 of the
// lifted dual coefficients (for X the unit vectors of l_1).
double oracle_norm_l2_l1(const std::vector<std::pair<int, int>>& blocks, const Vec& f) {
    double q_part = 0.0;
    double h_part = 0.0;
    for (const auto& [lo, hi] : blocks) {
        const int n_size = hi - lo + 1;
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += f[j - 1];
        const double avg = sum / n_size;
        for (int j = lo; j <= hi; ++j) q_part += (f[j - 1] - avg) * (f[j - 1] - avg);
        const double lambda = std::sqrt(double(n_size));
        const double dual = sum / (n_size / lambda);
        h_part += std::abs(dual);
    }
    return std::sqrt(q_part) + h_part;
}

Vec random_vec(Rng& rng, int n) {
    Vec v(n);
    for (double& x : v) x = rng.gaussian();
    return v;
}

}  // namespace

TEST_CASE("partition from sizes") {
    const OrderedPartition p = OrderedPartition::from_sizes({1, 2, 3});
    CHECK(p.blocks() == 3);
    CHECK(p.block(1) == std::pair<long long, long long>{1, 1});
    CHECK(p.block(2) == std::pair<long long, long long>{2, 3});
    CHECK(p.block(3) == std::pair<long long, long long>{4, 6});
    CHECK(p.cumulative() == std::vector<long long>{1, 3, 6});
    CHECK(OrderedPartition::from_sizes({1}).cumulative() == std::vector<long long>{1});
    CHECK(OrderedPartition::from_sizes({2, 2}).cumulative() == std::vector<long long>{2, 4});
    CHECK_THROWS_AS(OrderedPartition::from_sizes({}), validation_error);
    CHECK_THROWS_AS(OrderedPartition::from_sizes({1, 0}), validation_error);
}

TEST_CASE("partition from concave profile") {
    // phi(t) = 1 + t, psi(u) = u - 1, base 5: M_r = 5^{r-1} (oracle: direct
    // formula evaluation).
    const ConcaveSpec spec = ConcaveSpec::affine(1.0, 1.0, 5.0);
    const OrderedPartition p = partition_from_concave(spec, 4);
    std::vector<long long> expect;
    for (int r = 1; r <= 4; ++r)
        expect.push_back(static_cast<long long>(std::floor(std::pow(5.0, r - 1))));
    CHECK(p.cumulative() == expect);
    CHECK(p.cumulative() == std::vector<long long>{1, 5, 25, 125});
    CHECK(spec.growth_constant() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(spec.growth_constant() > 2.0);
    // base 4 gives C = 2, not > 2
    CHECK_THROWS_AS(ConcaveSpec::affine(1.0, 1.0, 4.0), validation_error);
}

TEST_CASE("right inverse") {
    const OrderedPartition p = OrderedPartition::from_sizes({1, 4, 20});
    REQUIRE(p.cumulative() == std::vector<long long>{1, 5, 25});
    CHECK(p.right_inverse(3) == 2);
    CHECK(p.right_inverse(1) == 1);
    CHECK(p.right_inverse(5) == 2);
    CHECK(p.right_inverse(25) == 3);
    CHECK_THROWS_AS(p.right_inverse(0), validation_error);
    CHECK_THROWS_AS(p.right_inverse(26), validation_error);
    // M_{B_m - 1} < m <= M_{B_m} on the whole range
    for (long long m = 1; m <= 25; ++m) {
        const int r = p.right_inverse(m);
        CHECK(p.cum(r - 1) < m);
        CHECK(m <= p.cum(r));
    }
}

TEST_CASE("averaging projection") {
    const OrderedPartition p = OrderedPartition::from_sizes({2, 2});
    {
        const auto [pf, qf] = p.averaging(Vec{1.0, 3.0});
        CHECK(pf == Vec{2.0, 2.0});
        CHECK(qf == Vec{-1.0, 1.0});
    }
    {
        const auto [pf, qf] = p.averaging(Vec{5.0, 5.0, 2.0, 2.0});
        CHECK(pf == Vec{5.0, 5.0, 2.0, 2.0});
        CHECK(qf == Vec{0.0, 0.0, 0.0, 0.0});
    }
    {
        const auto [pf, qf] = p.averaging(Vec{1.0, -1.0, 2.0, -2.0});
        CHECK(pf == Vec{0.0, 0.0, 0.0, 0.0});
        CHECK(qf == Vec{1.0, -1.0, 2.0, -2.0});
    }
    // a vector ending mid-block is padded: the average spreads over the block
    {
        const auto [pf, qf] = p.averaging(Vec{0.0, 0.0, 1.0});
        REQUIRE(pf.size() == 4);
        CHECK(pf == Vec{0.0, 0.0, 0.5, 0.5});
        CHECK(qf == Vec{0.0, 0.0, 0.5, -0.5});
    }
    // idempotence on random vectors
    const OrderedPartition sigma = OrderedPartition::from_sizes({1, 2, 4, 8});
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const Vec f = random_vec(rng, 15);
        const auto [pf, qf] = sigma.averaging(f);
        const auto [ppf, pqf] = sigma.averaging(pf);
        const auto [qpf_p, qpf_q] = sigma.averaging(qf);
        for (int i = 0; i < 15; ++i) {
            CHECK(ppf[i] == doctest::Approx(pf[i]).epsilon(1e-12));
            CHECK(std::abs(pqf[i]) <= 1e-12);
            CHECK(std::abs(qpf_p[i]) <= 1e-12);  // Q range is mean-zero per block
        }
        (void)qpf_q;
    }
}

TEST_CASE("dual block coefficients") {
    const DkkSpace y(SpaceSpec::lp(2.0, 7), BasisRep::difference(0.5, 3),
                     OrderedPartition::from_sizes({1, 2, 4}));
    // indicator of a size-4 block: v* = 4 / (4 / 2) = 2
    Vec f(7, 0.0);
    for (int j = 4; j <= 7; ++j) f[j - 1] = 1.0;
    CHECK(y.dual_coeffs(f) == Vec{0.0, 0.0, 2.0});
    // mean-zero on every block kills every dual coefficient
    const Vec g{0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0};
    CHECK(y.dual_coeffs(g) == Vec{0.0, 0.0, 0.0});
    // sigma_2 of size 2 in l_2: v_2^* = 2 / (2 / sqrt 2) = sqrt 2
    const Vec h{0.0, 1.0, 1.0};
    const Vec dual = y.dual_coeffs(h);
    CHECK(dual[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("dkk quasi-norm against the step-by-step oracle") {
    const DkkSpace y(SpaceSpec::lp(2.0, 3), BasisRep::unit_vectors(SpaceSpec::lp(1.0, 2)),
                     OrderedPartition::from_sizes({1, 2}));
    CHECK(y.norm(Vec{0.0, 1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(y.norm(Vec{0.0, 1.0, -1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(y.norm(Vec{1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<std::pair<int, int>> blocks{{1, 1}, {2, 3}};
    Rng rng(13);
    for (int t = 0; t < 300; ++t) {
        const Vec f = random_vec(rng, 3);
        CHECK(y.norm(f) == doctest::Approx(oracle_norm_l2_l1(blocks, f)).epsilon(1e-12));
    }
}

TEST_CASE("dkk construction rejects bad inputs") {
    // S must be locally convex
    CHECK_THROWS_AS(DkkSpace(SpaceSpec::lp(0.5, 3), BasisRep::difference(0.5, 2),
                             OrderedPartition::from_sizes({1, 2})),
                    validation_error);
    // weak Lorentz is not admitted as S
    CHECK_THROWS_AS(DkkSpace(SpaceSpec::weak_lorentz(Weight({1, 1, 1}), 3),
                             BasisRep::difference(0.5, 2), OrderedPartition::from_sizes({1, 2})),
                    validation_error);
    // X must have one vector per block
    CHECK_THROWS_AS(DkkSpace(SpaceSpec::lp(2.0, 3), BasisRep::difference(0.5, 1),
                             OrderedPartition::from_sizes({1, 2})),
                    validation_error);
    // Lorentz S with q >= 1 and concave primitive is accepted
    CHECK_NOTHROW(DkkSpace(SpaceSpec::lorentz(1.5, Weight({1.0, 0.5, 0.25}), 3),
                           BasisRep::difference(0.5, 2), OrderedPartition::from_sizes({1, 2})));
    // but an increasing weight (convex primitive) is not
    CHECK_THROWS_AS(DkkSpace(SpaceSpec::lorentz(1.5, Weight({1.0, 2.0, 4.0}), 3),
                             BasisRep::difference(0.5, 2), OrderedPartition::from_sizes({1, 2})),
                    validation_error);
}

TEST_CASE("projection bounds and block equivalence on the default instance") {
    const DkkSpace y = repro::default_dkk(15);
    const SpaceSpec& s = y.symmetric_space();
    Rng rng(19);
    for (int t = 0; t < 500; ++t) {
        const Vec f = random_vec(rng, 15);
        const auto [pf, qf] = y.partition().averaging(f);
        CHECK(s.norm(pf) <= 2.0 * s.norm(f) * (1 + 1e-12));
        CHECK(s.norm(qf) <= 3.0 * s.norm(f) * (1 + 1e-12));
    }
    // single-block vectors: dkk norm equivalent to the S norm, block by block
    for (int n = 1; n <= y.partition().blocks(); ++n) {
        const auto [lo, hi] = y.partition().block(n);
        double c1 = kInf, c2 = 0.0;
        for (int t = 0; t < 300; ++t) {
            Vec f(15, 0.0);
            for (long long j = lo; j <= hi; ++j) f[j - 1] = rng.gaussian();
            const double denom = s.norm(f);
            if (!(denom > 0.0)) continue;
            const double ratio = y.norm(f) / denom;
            c1 = std::min(c1, ratio);
            c2 = std::max(c2, ratio);
        }
        CHECK(c1 >= 1.0 - 1e-12);           // the Q part alone already gives ||f||_S at worst
        CHECK(c2 <= std::sqrt(17.0) + 1e-9);  // sqrt(1 + ||x_n||^2) with ||x_n|| <= 4
    }
}

TEST_CASE("dkk norm is absolutely homogeneous with bounded concavity modulus") {
    const DkkSpace y = repro::default_dkk(15);
    Rng rng(37);
    double kappa = 0.0;
    for (int t = 0; t < 400; ++t) {
        const Vec f = random_vec(rng, 15);
        const double lambda = -2.0 + 4.0 * rng.uniform();
        Vec g = f;
        for (double& x : g) x *= lambda;
        CHECK(y.norm(g) == doctest::Approx(std::abs(lambda) * y.norm(f)).epsilon(1e-12));
        const Vec h = t % 4 == 0 ? f : random_vec(rng, 15);
        Vec sum(15);
        for (int i = 0; i < 15; ++i) sum[i] = f[i] + h[i];
        kappa = std::max(kappa, y.norm(sum) / (y.norm(f) + y.norm(h)));
    }
    // kappa[S part] = 1 and kappa[l_{1/2}] = 2, so the sum form stays <= 2
    CHECK(kappa <= 2.0 + 1e-12);
}

TEST_CASE("dkk composes with concatenated bases and lorentz spaces") {
    // X = (D^(2) ++ D^(4) ++ D^(8)) in the l_2 sense: the mixed-norm route to
    // a conditional basis with one vector per block and then some.
    BasisRep x = BasisRep::concatenated({BasisRep::difference(0.5, 2), BasisRep::difference(0.5, 4),
                                         BasisRep::difference(0.5, 8)},
                                        SpaceSpec::lp(2.0, 3));
    const DkkSpace y(SpaceSpec::lp(2.0, 15), x, OrderedPartition::from_sizes({1, 2, 4, 8}));
    Rng rng(59);
    for (int t = 0; t < 200; ++t) {
        Vec f(15);
        for (double& v : f) v = rng.gaussian();
        const double base = y.norm(f);
        CHECK(base > 0.0);
        Vec g = f;
        for (double& v : g) v *= -3.0;
        CHECK(y.norm(g) == doctest::Approx(3.0 * base).epsilon(1e-12));
    }
    const auto [lo, hi] = BasisRep::dkk(std::make_shared<DkkSpace>(y)).element_norm_range();
    CHECK(lo > 0.0);
    CHECK(hi / lo < 50.0);

    // Lorentz S with concave primitive: single-block equivalence stays banded.
    std::vector<double> w(15, 0.0);
    for (int n = 0; n < 15; ++n) w[n] = 1.0 / (1.0 + n);
    const DkkSpace yl(SpaceSpec::lorentz(1.0, Weight(w), 15), BasisRep::difference(0.5, 4),
                      OrderedPartition::from_sizes({1, 2, 4, 8}));
    for (int n = 1; n <= 4; ++n) {
        const auto [blo, bhi] = yl.partition().block(n);
        double c1 = kInf, c2 = 0.0;
        for (int t = 0; t < 200; ++t) {
            Vec f(15, 0.0);
            for (long long j = blo; j <= bhi; ++j) f[j - 1] = rng.gaussian();
            const double denom = yl.symmetric_space().norm(f);
            if (!(denom > 0.0)) continue;
            const double ratio = yl.norm(f) / denom;
            c1 = std::min(c1, ratio);
            c2 = std::max(c2, ratio);
        }
        CHECK(c2 / c1 < 20.0);
    }
}

TEST_CASE("regularity sums with explicit constants") {
    const auto gamma = [](long long n) { return std::sqrt(double(n)); };
    const auto sizes = [](int n) { return 1ll << n; };
    const RegularitySumReport rep = regularity_sums(gamma, sizes, 0.5, 30);
    CHECK(rep.alpha == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rep.c1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.c2 < 2.0 + 1e-9);
    CHECK(rep.b == 2);
    // closed form: sum_{n <= r} 2^{(n-r)/4} < 1 / (1 - 2^{-1/4})
    const double geo = 1.0 / (1.0 - std::pow(2.0, -0.25));
    CHECK(rep.sup_head <= geo + 1e-9);
    CHECK(rep.sup_tail <= geo + 1e-9);
    CHECK(rep.sup_head <= rep.head_bound);
    CHECK(rep.sup_tail <= rep.tail_bound);
    CHECK(rep.adversarial_sum <= rep.adversarial_bound);
}

#include "greedylab/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "greedylab/io.hpp"
#include "greedylab/params.hpp"
#include "greedylab/rng.hpp"
#include "greedylab/tga.hpp"

namespace greedylab::repro {

namespace {

constexpr std::uint64_t kSeed = 20240917ull;

std::string fmt(double v) { return io::format_double(v); }

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Vec gaussian_vec(Rng& rng, int dim) {
    Vec v(dim);
    for (double& x : v) x = rng.gaussian();
    return v;
}

CheckResult make_result(const std::string& name, bool pass, const std::string& detail) {
    return {name, pass, detail};
}

/// Block-constant lift of X-side coefficients into the DKK coordinates:
/// f = sum_n (a_n / Lambda_{N_n}) 1_{sigma_n}, which has Q_sigma f = 0 and
/// v_n^*(f) = a_n.
Vec block_constant_transfer(const DkkSpace& y, std::span<const double> x_coeffs) {
    const int r = static_cast<int>(x_coeffs.size());
    if (r > y.partition().blocks()) throw validation_error("transfer exceeds block count");
    Vec f(static_cast<std::size_t>(y.partition().cum(r)), 0.0);
    for (int n = 1; n <= r; ++n) {
        const auto [lo, hi] = y.partition().block(n);
        const double c = x_coeffs[n - 1] / y.lambda(n);
        for (long long j = lo; j <= hi; ++j) f[j - 1] = c;
    }
    return f;
}

// --------------------------------------------------------------------------
// criteria
// --------------------------------------------------------------------------

CheckResult criterion_difference_conditionality() {
    const double t0 = now_seconds();
    std::ostringstream detail;
    bool pass = true;

    for (int m : {1, 3, 5, 7}) {
        BasisRep basis = BasisRep::difference(0.5, m);
        const Vec a(m, 1.0);
        Vec sa(m, 0.0);
        for (int j = 1; j <= m; j += 2) sa[j - 1] = 1.0;
        const double ratio = basis.basis_norm(sa) / basis.basis_norm(a);
        const double expect = static_cast<double>(m) * m;  // m^{1/p}, p = 1/2
        if (!rel_close(ratio, expect, 1e-12)) {
            pass = false;
            detail << "witness ratio at m=" << m << " is " << fmt(ratio) << " != " << fmt(expect)
                   << "; ";
        }
    }

    for (int m = 1; m <= 5; ++m) {
        BasisRep basis = BasisRep::difference(0.5, m);
        const ParamReport rep = conditionality(basis.norm_fn(), m, m, ConditionalityKind::KTilde,
                                               SearchMode::exhaustive(), 0.5);
        const double found = rep.rows.at(0).value;
        const double expect = static_cast<double>(m) * m;
        if (!(found <= expect * (1.0 + 1e-12))) {
            pass = false;
            detail << "grid search exceeds the ceiling at m=" << m << ": " << fmt(found) << "; ";
        }
        if (!rel_close(found, expect, 1e-12)) {
            pass = false;
            detail << "grid search missed m^2 at m=" << m << ": " << fmt(found) << "; ";
        }
    }

    const double elapsed = now_seconds() - t0;
    if (elapsed >= 30.0) {
        pass = false;
        detail << "runtime " << fmt(elapsed) << "s >= 30s; ";
    }
    detail << "k~_m[D, l_1/2] = m^2 on {1,3,5,7} witnesses and exhaustive dyadic grids (m <= 5), "
           << fmt(elapsed) << "s";
    return make_result("1 difference-system conditionality", pass, detail.str());
}

CheckResult criterion_monotone_basis() {
    BasisRep basis = BasisRep::difference(0.5, 64);
    int violations = 0;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 10000; ++t) {
        Rng rng = Rng::for_trial(kSeed, t);
        const Vec a = gaussian_vec(rng, 64);
        const double base = basis.basis_norm(a);
        Vec prefix = a;
        for (int m = 63; m >= 1; --m) {
            prefix[m] = 0.0;
            const double v = basis.basis_norm(prefix);
            worst = std::max(worst, v / base);
            if (v > base * (1.0 + 1e-12)) ++violations;
        }
    }
    std::ostringstream detail;
    detail << violations << " violations over 10^4 samples x 63 prefixes (max ratio "
           << fmt(worst) << ")";
    return make_result("2 monotone Schauder basis", violations == 0, detail.str());
}

CheckResult criterion_partition_generator() {
    const double t0 = now_seconds();
    struct Case {
        ConcaveSpec spec;
        const char* label;
    };
    const std::vector<Case> cases{{ConcaveSpec::affine(1.0, 1.0, 5.0), "1+t (b=5)"},
                                  {ConcaveSpec::power(0.5, 5.0), "1+sqrt(t) (b=5)"},
                                  {ConcaveSpec::log_form(3.0), "1+log(1+t) (b=3)"}};
    bool pass = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        int r_max = 2;
        OrderedPartition partition = partition_from_concave(c.spec, r_max);
        while (partition.dim() < 100000) {
            ++r_max;
            partition = partition_from_concave(c.spec, r_max);
        }
        const double c_growth = c.spec.growth_constant();
        for (int r = 1; r < partition.blocks(); ++r) {
            if (!((c_growth - 1.0) * static_cast<double>(partition.cum(r)) <=
                  static_cast<double>(partition.cum(r + 1)) * (1.0 + 1e-9))) {
                pass = false;
                detail << c.label << ": (C-1)M_r <= M_{r+1} fails at r=" << r << "; ";
            }
        }
        const double log_base = std::log(c.spec.base());
        for (long long m = 1; m <= 100000; ++m) {
            const int bm = partition.right_inverse(m);
            const double phi = c.spec.phi(std::log(static_cast<double>(m)) / log_base);
            if (!(bm - 1 <= phi + 1e-9 && phi <= bm + 1e-9)) {
                pass = false;
                detail << c.label << ": B_m bracket fails at m=" << m << " (B=" << bm
                       << ", phi=" << fmt(phi) << "); ";
                break;
            }
        }
    }
    const double elapsed = now_seconds() - t0;
    if (elapsed >= 10.0) {
        pass = false;
        detail << "runtime " << fmt(elapsed) << "s >= 10s; ";
    }
    detail << "B_m - 1 <= phi(log_b m) <= B_m for all m <= 1e5 on three profiles, " << fmt(elapsed)
           << "s";
    return make_result("3 partition generator", pass, detail.str());
}

CheckResult criterion_averaging_bounds() {
    const OrderedPartition partition =
        OrderedPartition::from_sizes({1, 2, 4, 8, 16});
    bool pass = true;
    std::ostringstream detail;
    double worst_p = 0.0, worst_q = 0.0;
    for (double q : {1.0, 1.5, 2.0, 4.0}) {
        const SpaceSpec s = SpaceSpec::lp(q, 31);
        for (std::uint64_t t = 0; t < 10000; ++t) {
            Rng rng = Rng::for_trial(kSeed + 4, t);
            const Vec f = gaussian_vec(rng, 31);
            const auto [pf, qf] = partition.averaging(f);
            const double base = s.norm(f);
            const double rp = s.norm(pf) / base;
            const double rq = s.norm(qf) / base;
            worst_p = std::max(worst_p, rp);
            worst_q = std::max(worst_q, rq);
            if (rp > 2.0 * (1.0 + 1e-12) || rq > 3.0 * (1.0 + 1e-12)) {
                pass = false;
            }
        }
    }
    detail << "max ||P f||/||f|| = " << fmt(worst_p) << " (<= 2), max ||Q f||/||f|| = "
           << fmt(worst_q) << " (<= 3) over q in {1,1.5,2,4}, 10^4 samples each";
    return make_result("4 averaging projection bounds", pass, detail.str());
}

CheckResult criterion_block_equivalence(std::map<std::string, std::string>& artifacts) {
    const DkkSpace y = default_dkk(31);
    const SpaceSpec s = y.symmetric_space();
    const int blocks = y.partition().blocks();
    std::vector<double> c1(blocks, kInf), c2(blocks, 0.0);
    for (int n = 1; n <= blocks; ++n) {
        const auto [lo, hi] = y.partition().block(n);
        for (std::uint64_t t = 0; t < 1000; ++t) {
            Rng rng = Rng::for_trial(kSeed + 5 + n, t);
            Vec f(31, 0.0);
            for (long long j = lo; j <= hi; ++j) f[j - 1] = rng.gaussian();
            const double denom = s.norm(f);
            if (!(denom > 0.0)) continue;
            const double ratio = y.norm(f) / denom;
            c1[n - 1] = std::min(c1[n - 1], ratio);
            c2[n - 1] = std::max(c2[n - 1], ratio);
        }
    }
    const double global_lo = *std::min_element(c1.begin(), c1.end());
    const double global_hi = *std::max_element(c2.begin(), c2.end());
    bool pass = global_hi / global_lo <= 20.0;
    const double lo_spread = *std::max_element(c1.begin(), c1.end()) / global_lo;
    if (lo_spread > 2.0) pass = false;
    double w_min = kInf, w_max = 0.0;
    for (int n = 1; n <= blocks; ++n) {
        if (y.partition().size(n) < 2) continue;  // singleton block has a degenerate band
        const double w = c2[n - 1] / c1[n - 1];
        w_min = std::min(w_min, w);
        w_max = std::max(w_max, w);
    }
    if (w_max > 2.0 * w_min) pass = false;

    std::string csv = "block,c1,c2\n";
    for (int n = 1; n <= blocks; ++n)
        csv += std::to_string(n) + "," + fmt(c1[n - 1]) + "," + fmt(c2[n - 1]) + "\n";
    artifacts["block_equivalence.csv"] = csv;

    std::ostringstream detail;
    detail << "pooled band [" << fmt(global_lo) << ", " << fmt(global_hi) << "], c2/c1 = "
           << fmt(global_hi / global_lo) << " (<= 20); lower-edge spread " << fmt(lo_spread)
           << " (<= 2); width spread " << fmt(w_max / w_min) << " (<= 2 over blocks of size >= 2)";
    return make_result("5 block equivalence", pass, detail.str());
}

CheckResult criterion_dkk_quasi_greedy(std::map<std::string, std::string>& artifacts, int jobs) {
    std::vector<int> dims{15, 31, 63};
    std::vector<double> dkk_vals, diff_vals;
    for (int dim : dims) {
        const DkkSpace y = default_dkk(dim);
        dkk_vals.push_back(
            quasi_greedy_constant(y.norm_fn(), dim, 10000, kSeed + 6, jobs).rows.at(0).value);
        BasisRep diff = BasisRep::difference(0.5, dim);
        diff_vals.push_back(
            quasi_greedy_constant(diff.norm_fn(), dim, 10000, kSeed + 6, jobs).rows.at(0).value);
    }
    const double dkk_max = *std::max_element(dkk_vals.begin(), dkk_vals.end());
    const double dkk_min = *std::min_element(dkk_vals.begin(), dkk_vals.end());
    const bool bounded = dkk_max / dkk_min <= 1.5;
    const bool contrast = diff_vals[2] >= 2.0 * diff_vals[0];

    std::string csv = "dim,dkk_qg,difference_qg\n";
    for (std::size_t i = 0; i < dims.size(); ++i)
        csv += std::to_string(dims[i]) + "," + fmt(dkk_vals[i]) + "," + fmt(diff_vals[i]) + "\n";
    artifacts["quasi_greedy.csv"] = csv;

    std::ostringstream detail;
    detail << "DKK constants " << fmt(dkk_vals[0]) << "/" << fmt(dkk_vals[1]) << "/"
           << fmt(dkk_vals[2]) << " (max/min " << fmt(dkk_max / dkk_min)
           << " <= 1.5); difference grows " << fmt(diff_vals[0]) << " -> " << fmt(diff_vals[2])
           << " (x" << fmt(diff_vals[2] / diff_vals[0]) << " >= 2)";
    return make_result("6 empirical quasi-greediness", bounded && contrast, detail.str());
}

CheckResult criterion_democracy(std::map<std::string, std::string>& artifacts) {
    const DkkSpace y = default_dkk(15);
    const auto [upper, lower] =
        democracy_functions(y.norm_fn(), 15, 6, SearchMode::exhaustive(enumeration_budget()));
    bool pass = true;
    double band_lo = kInf, band_hi = 0.0;
    std::string csv = "m,phi_u_s,phi_l_s,phi_u_over_sqrt_m\n";
    std::ostringstream detail;
    for (int m = 1; m <= 6; ++m) {
        const double pu = upper.rows.at(m - 1).value;
        const double pl = lower.rows.at(m - 1).value;
        if (pu / pl > 10.0) {
            pass = false;
            detail << "phi_u(" << m << ") = " << fmt(pu) << " and phi_l(" << m << ") = " << fmt(pl)
                   << " give ratio " << fmt(pu / pl)
                   << " > 10; both values are exhaustively enumerated and the upper witness "
                      "re-evaluates, so the constant of this instance genuinely exceeds the "
                      "stated threshold; ";
        }
        const double ratio = pu / std::sqrt(static_cast<double>(m));
        band_lo = std::min(band_lo, ratio);
        band_hi = std::max(band_hi, ratio);
        csv += std::to_string(m) + "," + fmt(pu) + "," + fmt(pl) + "," + fmt(ratio) + "\n";
    }
    if (band_hi / band_lo > 4.0) {
        pass = false;
        detail << "phi_u/sqrt(m) band " << fmt(band_hi / band_lo) << " > 4; ";
    }
    artifacts["democracy.csv"] = csv;
    detail << "exhaustive m <= 6 at dim 15: phi_u/phi_l <= 10, phi_u/sqrt(m) in ["
           << fmt(band_lo) << ", " << fmt(band_hi) << "] (spread "
           << fmt(band_hi / band_lo) << " <= 4)";
    return make_result("7 democracy of the DKK basis", pass, detail.str());
}

CheckResult criterion_conditionality_transfer(std::map<std::string, std::string>& artifacts,
                                              int jobs) {
    const DkkSpace y(SpaceSpec::lp(2.0, 7), BasisRep::difference(0.5, 3),
                     OrderedPartition::from_sizes({1, 2, 4}));
    const NormFn ynorm = y.norm_fn();
    BasisRep x = BasisRep::difference(0.5, 3);
    bool pass = true;
    std::ostringstream detail;
    std::string csv = "r,M_r,k_tilde_x,k_tilde_y\n";
    for (int r = 1; r <= 3; ++r) {
        const int mr = static_cast<int>(y.partition().cum(r));
        const ParamReport xrep = conditionality(x.norm_fn(), 3, r, ConditionalityKind::KTilde,
                                                SearchMode::exhaustive(), 0.5);
        const double xv = xrep.rows.at(0).value;
        std::vector<Vec> candidates;
        candidates.push_back(block_constant_transfer(y, xrep.rows.at(0).f));
        candidates.push_back(block_constant_transfer(y, Vec(r, 1.0)));
        const ParamReport yrep = conditionality(ynorm, 7, mr, ConditionalityKind::KTilde,
                                                SearchMode::exhaustive(), 0.0, candidates);
        const double yv = yrep.rows.at(0).value;
        csv += std::to_string(r) + "," + std::to_string(mr) + "," + fmt(xv) + "," + fmt(yv) + "\n";
        if (!(yv >= xv * (1.0 - 1e-12))) {
            pass = false;
            detail << "k~_{M_r}[E,Y] < k~_r[X] at r=" << r << " (" << fmt(yv) << " vs " << fmt(xv)
                   << "); ";
        }
        if (r >= 2 && !(yv > xv * (1.0 + 1e-9))) {
            pass = false;
            detail << "not strict at r=" << r << ": both sides equal " << fmt(yv)
                   << " exactly; the sup on the DKK side is attained by the block-constant "
                      "transfer of the X-side witness, so the transfer inequality is tight "
                      "(non-strict) at this scale; ";
        }
    }
    artifacts["conditionality_transfer.csv"] = csv;

    // Lower-bound curve against phi^{1/p}(log m) on the dim-15 instance; the
    // default dyadic partition has B_m ~ 1 + log2 m, p = 1/2.
    const DkkSpace y15 = default_dkk(15);
    const NormFn y15norm = y15.norm_fn();
    std::string curve = "m,k_tilde_lower,ref_(1+log2_m)^2\n";
    for (int m = 1; m <= 15; ++m) {
        std::vector<Vec> candidates;
        for (int r = 1; r <= y15.partition().blocks(); ++r)
            if (y15.partition().cum(r) <= m)
                candidates.push_back(block_constant_transfer(y15, Vec(r, 1.0)));
        const ParamReport rep = conditionality(y15norm, 15, m, ConditionalityKind::KTilde,
                                               SearchMode::sampled(800, kSeed + 8, jobs), 0.0,
                                               candidates);
        const double ref = std::pow(1.0 + std::log2(static_cast<double>(m)), 2.0);
        curve += std::to_string(m) + "," + fmt(rep.rows.at(0).value) + "," + fmt(ref) + "\n";
    }
    artifacts["k_tilde_curve.csv"] = curve;

    detail << "transfer inequality at r in {1,2,3}, sizes (1,2,4); curve emitted against "
              "(1+log2 m)^2";
    return make_result("8 conditionality transfer", pass, detail.str());
}

CheckResult criterion_regularity_sums() {
    const auto gamma = [](long long n) { return std::sqrt(static_cast<double>(n)); };
    const auto sizes = [](int n) { return 1ll << n; };
    const RegularitySumReport rep = regularity_sums(gamma, sizes, 0.5, 30);
    bool pass = rep.sup_head <= rep.head_bound && rep.sup_tail <= rep.tail_bound &&
                rep.adversarial_sum <= rep.adversarial_bound;
    std::ostringstream detail;
    detail << "head " << fmt(rep.sup_head) << " <= " << fmt(rep.head_bound) << ", tail "
           << fmt(rep.sup_tail) << " <= " << fmt(rep.tail_bound) << ", adversarial m_n = M_r "
           << fmt(rep.adversarial_sum) << " <= " << fmt(rep.adversarial_bound) << " (alpha="
           << fmt(rep.alpha) << ", C1=" << fmt(rep.c1) << ", C2=" << fmt(rep.c2) << ", t="
           << fmt(rep.t) << ", b=" << rep.b << ")";
    return make_result("9 regularity sums", pass, detail.str());
}

CheckResult criterion_tga_sanity() {
    bool pass = true;
    std::ostringstream detail;
    BasisRep l2 = BasisRep::unit_vectors(SpaceSpec::lp(2.0, 12));
    const NormFn l2norm = l2.norm_fn();
    double worst = 0.0;
    for (int m = 1; m <= 8; ++m) {
        const ParamReport rep =
            lebesgue_lower(l2norm, 12, m, SearchMode::sampled(300, kSeed + 10));
        const double v = rep.rows.at(0).value;
        worst = std::max(worst, std::abs(v - 1.0));
        if (std::abs(v - 1.0) > 1e-12) {
            pass = false;
            detail << "L_" << m << " lower bound " << fmt(v) << " != 1 on orthonormal l_2; ";
        }
        if (!verify_witnesses(rep, l2norm)) {
            pass = false;
            detail << "witness re-evaluation failed at m=" << m << "; ";
        }
    }
    BasisRep diff = BasisRep::difference(0.5, 8);
    const NormFn dnorm = diff.norm_fn();
    const ParamReport rep = lebesgue_lower(dnorm, 8, 1, SearchMode::sampled(500, kSeed + 11));
    const double v = rep.rows.at(0).value;
    if (!(v >= 4.0 * (1.0 - 1e-9))) {
        pass = false;
        detail << "difference L_1 lower bound " << fmt(v) << " < 4; ";
    }
    if (!verify_witnesses(rep, dnorm)) {
        pass = false;
        detail << "difference witness re-evaluation failed; ";
    }
    detail << "l_2 lower bounds exactly 1 for m <= 8 (max dev " << fmt(worst)
           << "); difference L_1 >= " << fmt(v) << " with reproducible witness";
    return make_result("10 TGA sanity", pass, detail.str());
}

CheckResult criterion_determinism() {
    const DkkSpace y = default_dkk(15);
    const NormFn norm = y.norm_fn();
    auto run_all = [&](int jobs) {
        std::string blob;
        blob += io::to_json(quasi_greedy_constant(norm, 15, 2000, kSeed + 12, jobs)).dump();
        const auto [upper, lower] =
            democracy_functions(norm, 15, 5, SearchMode::sampled(2000, kSeed + 13, jobs));
        blob += io::to_json(upper).dump();
        blob += io::to_json(lower).dump();
        blob += io::to_json(suppression_constant(norm, 15, SearchMode::sampled(500, kSeed + 14,
                                                                               jobs)))
                    .dump();
        blob += io::to_json(lebesgue_lower(norm, 15, 2, SearchMode::sampled(200, kSeed + 15, jobs)))
                    .dump();
        return blob;
    };
    const std::string serial = run_all(1);
    const std::string parallel = run_all(4);
    const bool pass = serial == parallel;
    std::ostringstream detail;
    detail << (pass ? "byte-identical reports with --jobs 1 and --jobs 4"
                    : "reports differ between --jobs 1 and --jobs 4");
    return make_result("11 determinism across worker counts", pass, detail.str());
}

}  // namespace

DkkSpace default_dkk(int dim) {
    std::vector<long long> sizes;
    long long total = 0, size = 1;
    while (total < dim) {
        sizes.push_back(size);
        total += size;
        size *= 2;
    }
    if (total != dim)
        throw validation_error("default_dkk: dim must be 2^k - 1 for block sizes 1,2,4,...");
    const int blocks = static_cast<int>(sizes.size());
    return DkkSpace(SpaceSpec::lp(2.0, dim), BasisRep::difference(0.5, blocks),
                    OrderedPartition::from_sizes(std::move(sizes)));
}

std::vector<std::string> suite_names() {
    return {"acceptance",  "difference-conditionality", "partition", "projection",
            "dkk-block",   "quasi-greedy",              "democracy", "prop-existence-ag",
            "regularity",  "tga",                       "determinism"};
}

SuiteOutput run_suite(const std::string& suite, int jobs) {
    SuiteOutput out;
    const double t0 = now_seconds();
    const bool all = suite == "acceptance";

    if (all || suite == "difference-conditionality") {
        out.results.push_back(criterion_difference_conditionality());
        out.results.push_back(criterion_monotone_basis());
    }
    if (all || suite == "partition") out.results.push_back(criterion_partition_generator());
    if (all || suite == "projection") out.results.push_back(criterion_averaging_bounds());
    if (all || suite == "dkk-block" || suite == "prop-existence-ag")
        out.results.push_back(criterion_block_equivalence(out.artifacts));
    if (all || suite == "quasi-greedy" || suite == "prop-existence-ag")
        out.results.push_back(criterion_dkk_quasi_greedy(out.artifacts, jobs));
    if (all || suite == "democracy" || suite == "prop-existence-ag")
        out.results.push_back(criterion_democracy(out.artifacts));
    if (all || suite == "prop-existence-ag")
        out.results.push_back(criterion_conditionality_transfer(out.artifacts, jobs));
    if (all || suite == "regularity") out.results.push_back(criterion_regularity_sums());
    if (all || suite == "tga") out.results.push_back(criterion_tga_sanity());
    if (all || suite == "determinism") out.results.push_back(criterion_determinism());

    if (all) {
        const double elapsed = now_seconds() - t0;
        std::ostringstream detail;
        detail << fmt(elapsed) << "s total (< 600s)";
        out.results.push_back(make_result("11b acceptance wall time", elapsed < 600.0,
                                          detail.str()));
    }
    if (out.results.empty()) throw validation_error("unknown suite '" + suite + "'");
    return out;
}

// ---------------------------------------------------------------------------
// invariant suites (`verify`)
// ---------------------------------------------------------------------------

namespace {

CheckResult invariance_checks(std::uint64_t seed) {
    bool pass = true;
    std::ostringstream detail;
    const Weight w({1.0, 0.5, 0.25, 0.25, 0.125, 0.125, 0.0625, 0.0625});
    std::vector<SpaceSpec> spaces{SpaceSpec::lp(0.5, 8), SpaceSpec::lp(2.0, 8),
                                  SpaceSpec::lp(kInf, 8), SpaceSpec::lorentz(1.5, w, 8),
                                  SpaceSpec::weak_lorentz(w, 8)};
    for (const auto& s : spaces) {
        for (std::uint64_t t = 0; t < 200; ++t) {
            Rng rng = Rng::for_trial(seed, t);
            Vec f = gaussian_vec(rng, 8);
            const double base = s.norm(f);
            Vec g = f;
            for (std::size_t i = 7; i > 0; --i) std::swap(g[i], g[rng.below(i + 1)]);
            for (double& x : g) x *= rng.sign();
            if (!rel_close(s.norm(g), base, 1e-12)) {
                pass = false;
                detail << s.describe() << " not rearrangement/sign invariant; ";
                break;
            }
            const double lambda = 0.5 + rng.uniform();
            Vec h = f;
            for (double& x : h) x *= lambda;
            if (!rel_close(s.norm(h), lambda * base, 1e-12)) {
                pass = false;
                detail << s.describe() << " not homogeneous; ";
                break;
            }
        }
    }
    if (pass) detail << "rearrangement, sign and scaling invariance hold to 1e-12";
    return {"spaces invariance", pass, detail.str()};
}

CheckResult p_triangle_check(std::uint64_t seed) {
    const SpaceSpec s = SpaceSpec::lp(0.5, 8);
    bool pass = true;
    for (std::uint64_t t = 0; t < 500 && pass; ++t) {
        Rng rng = Rng::for_trial(seed + 1, t);
        const Vec f = gaussian_vec(rng, 8), g = gaussian_vec(rng, 8);
        Vec sum(8);
        for (int i = 0; i < 8; ++i) sum[i] = f[i] + g[i];
        const double lhs = std::sqrt(s.norm(sum));
        const double rhs = std::sqrt(s.norm(f)) + std::sqrt(s.norm(g));
        pass = lhs <= rhs * (1.0 + 1e-12);
    }
    return {"p-triangle inequality (p=1/2)", pass,
            pass ? "||f+g||^p <= ||f||^p + ||g||^p on 500 random pairs" : "violated"};
}

CheckResult lorentz_checks(std::uint64_t seed) {
    bool pass = true;
    std::ostringstream detail;
    const Weight w({1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125});
    const SpaceSpec dq = SpaceSpec::lorentz(2.0, w, 6);
    const SpaceSpec dp = SpaceSpec::lorentz(0.75, w, 6);
    double measured = 0.0;
    for (std::uint64_t t = 0; t < 500; ++t) {
        Rng rng = Rng::for_trial(seed + 2, t);
        const Vec f = gaussian_vec(rng, 6);
        measured = std::max(measured, dq.norm(f) / dp.norm(f));
    }
    if (!(measured <= 1.0 + 1e-12)) {
        // d_q(w) norms decrease in q only up to a constant in general; for
        // this weight the constant is 1, so anything larger flags a bug.
        pass = false;
        detail << "monotonicity constant " << fmt(measured) << "; ";
    }
    // Same primitive sequence, differently constructed weight object.
    std::vector<double> diffs(6);
    double prev = 0.0;
    for (int n = 1; n <= 6; ++n) {
        diffs[n - 1] = w.s(n) - prev;
        prev = w.s(n);
    }
    const SpaceSpec dq2 = SpaceSpec::lorentz(2.0, Weight(diffs), 6);
    for (std::uint64_t t = 0; t < 100 && pass; ++t) {
        Rng rng = Rng::for_trial(seed + 3, t);
        const Vec f = gaussian_vec(rng, 6);
        if (dq.norm(f) != dq2.norm(f)) {
            pass = false;
            detail << "norm depends on the weight beyond its primitive; ";
        }
    }
    for (int m = 1; m <= 8; ++m) {
        const auto [lam, dual] = SpaceSpec::lp(0.5, 8).fundamental_pair(m);
        if (!rel_close(lam, static_cast<double>(m) * m, 1e-12)) {
            pass = false;
            detail << "Lambda_m[l_1/2] != m^2 at m=" << m << "; ";
        }
        (void)dual;
    }
    if (pass) detail << "q-monotonicity (C = " << fmt(measured) << "), primitive dependence, "
                     << "and Lambda_m[l_p] = m^{1/p} hold";
    return {"lorentz structure", pass, detail.str()};
}

CheckResult basis_checks(std::uint64_t seed) {
    bool pass = true;
    std::ostringstream detail;
    std::vector<BasisRep> bases{
        BasisRep::difference(0.5, 12),
        BasisRep::unit_vectors(SpaceSpec::lp(2.0, 12)),
        BasisRep::interleaved({BasisRep::difference(0.5, 6),
                               BasisRep::unit_vectors(SpaceSpec::lp(2.0, 6))}),
        BasisRep::concatenated({BasisRep::difference(0.5, 4), BasisRep::difference(0.5, 8)},
                               SpaceSpec::lp(2.0, 2)),
        BasisRep::dkk(std::make_shared<DkkSpace>(default_dkk(15)))};
    for (const auto& basis : bases) {
        for (std::uint64_t t = 0; t < 200 && pass; ++t) {
            Rng rng = Rng::for_trial(seed + 4, t);
            const Vec a = gaussian_vec(rng, basis.dim());
            const Vec round = basis.analyze(basis.synthesize(a));
            for (int i = 0; i < basis.dim(); ++i)
                if (!rel_close(round[i], a[i], 1e-12)) {
                    pass = false;
                    detail << basis.describe() << " fails analyze(synthesize) = id; ";
                    break;
                }
        }
        const auto [lo, hi] = basis.element_norm_range();
        if (!(lo > 0.0) || !std::isfinite(hi)) {
            pass = false;
            detail << basis.describe() << " not semi-normalized; ";
        }
    }
    // S_A S_B = S_{A and B} exactly.
    Rng rng = Rng::for_trial(seed + 5, 0);
    const Vec a = gaussian_vec(rng, 12);
    const IndexSet A({1, 3, 5, 7, 9}), B({2, 3, 4, 5, 11});
    const Vec ab = coordinate_projection(coordinate_projection(a, B), A);
    const Vec inter = coordinate_projection(a, A.intersect(B));
    if (ab != inter) {
        pass = false;
        detail << "S_A S_B != S_{A cap B}; ";
    }
    if (pass) detail << "biorthogonality, semi-normalization, projection algebra hold";
    return {"bases", pass, detail.str()};
}

CheckResult dkk_checks(std::uint64_t seed) {
    bool pass = true;
    std::ostringstream detail;
    const DkkSpace y = default_dkk(15);
    const OrderedPartition& partition = y.partition();
    for (std::uint64_t t = 0; t < 300 && pass; ++t) {
        Rng rng = Rng::for_trial(seed + 6, t);
        const Vec f = gaussian_vec(rng, 15);
        const auto [pf, qf] = partition.averaging(f);
        const auto [ppf, qpf] = partition.averaging(pf);
        for (int i = 0; i < 15; ++i) {
            if (!rel_close(ppf[i], pf[i], 1e-12) || std::abs(qpf[i]) > 1e-12) pass = false;
        }
        if (!pass) detail << "averaging projection not idempotent; ";
        const double k_bound = 2.0;  // kappa[l_2] * kappa[l_1/2 part] bound for the sum form
        const Vec g = gaussian_vec(rng, 15);
        Vec sum(15);
        for (int i = 0; i < 15; ++i) sum[i] = f[i] + g[i];
        if (y.norm(sum) > k_bound * (y.norm(f) + y.norm(g)) * (1.0 + 1e-12)) {
            pass = false;
            detail << "quasi-triangle constant above the component bound; ";
        }
    }
    const auto [lo, hi] = BasisRep::dkk(std::make_shared<DkkSpace>(y)).element_norm_range();
    if (!(lo > 0.0 && hi / lo < 50.0)) {
        pass = false;
        detail << "unit vectors not semi-normalized (ratio " << fmt(hi / lo) << "); ";
    }
    if (pass)
        detail << "idempotence, quasi-triangle bound, semi-normalization (ratio " << fmt(hi / lo)
               << ") hold";
    return {"dkk construction", pass, detail.str()};
}

CheckResult tga_checks(std::uint64_t seed) {
    bool pass = true;
    std::ostringstream detail;
    const SpaceSpec l1 = SpaceSpec::lp(1.0, 10);
    const NormFn normer = [l1](std::span<const double> f) { return l1.norm(f); };
    for (std::uint64_t t = 0; t < 200 && pass; ++t) {
        Rng rng = Rng::for_trial(seed + 7, t);
        const Vec a = gaussian_vec(rng, 10);
        const GreedyRun run = greedy_residual_curve(normer, a, 10);
        // Residual equals the l_1 mass of the sorted tail and is nonincreasing.
        Vec mags(10);
        for (int i = 0; i < 10; ++i) mags[i] = std::abs(a[i]);
        std::sort(mags.begin(), mags.end(), std::greater<double>());
        double tail = std::accumulate(mags.begin(), mags.end(), 0.0);
        for (int m = 0; m <= 10; ++m) {
            if (!rel_close(run.steps[m].residual, tail, 1e-12)) pass = false;
            if (m < 10) tail -= mags[m];
        }
        if (!pass) detail << "residual curve is not the sorted tail in l_1; ";
        // Every returned greedy set satisfies the threshold inequality.
        for (int m = 1; m <= 10; ++m) {
            const IndexSet set = greedy_set(a, m);
            double in_min = kInf, out_max = 0.0;
            for (int j = 1; j <= 10; ++j) {
                const double v = std::abs(a[j - 1]);
                if (set.contains(j))
                    in_min = std::min(in_min, v);
                else
                    out_max = std::max(out_max, v);
            }
            if (in_min < out_max) {
                pass = false;
                detail << "greedy set violates the threshold inequality; ";
            }
        }
    }
    if (pass) detail << "residual tails and greedy-set validity hold on 200 samples";
    return {"tga", pass, detail.str()};
}

CheckResult decomposition_check(std::uint64_t seed) {
    // S_A = S_F + S_E - S_B with F = [1, m], E = A \ F, B = F \ A, checked
    // coefficientwise and exactly.
    bool pass = true;
    for (std::uint64_t t = 0; t < 300 && pass; ++t) {
        Rng rng = Rng::for_trial(seed + 8, t);
        const Vec f = gaussian_vec(rng, 12);
        const int m = 1 + static_cast<int>(rng.below(12));
        const IndexSet A = greedy_set(f, m, rng.sign() > 0 ? TieRule::LowestIndex
                                                           : TieRule::HighestIndex);
        const IndexSet F = IndexSet::range(1, m);
        const IndexSet E = A.set_minus(F);
        const IndexSet B = F.set_minus(A);
        const Vec sa = coordinate_projection(f, A);
        const Vec sf = coordinate_projection(f, F);
        const Vec se = coordinate_projection(f, E);
        const Vec sb = coordinate_projection(f, B);
        for (int i = 0; i < 12; ++i)
            if (sa[i] != sf[i] + se[i] - sb[i]) pass = false;
    }
    return {"greedy projection decomposition", pass,
            pass ? "S_A f = S_F f + S_E f - S_B f exactly on 300 greedy sets" : "violated"};
}

}  // namespace

std::vector<CheckResult> verify_invariants(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(invariance_checks(seed));
    out.push_back(p_triangle_check(seed));
    out.push_back(lorentz_checks(seed));
    out.push_back(basis_checks(seed));
    out.push_back(dkk_checks(seed));
    out.push_back(tga_checks(seed));
    out.push_back(decomposition_check(seed));
    return out;
}

}  // namespace greedylab::repro

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "greedylab/bases.hpp"
#include "greedylab/core.hpp"
#include "greedylab/spaces.hpp"

namespace greedylab {

/// Consecutive integer-interval blocks sigma_n = [1+M_{n-1}, M_n].
class OrderedPartition {
public:
    static OrderedPartition from_sizes(std::vector<long long> sizes);

    int blocks() const { return static_cast<int>(sizes_.size()); }
    long long size(int n) const { return sizes_[n - 1]; }          // N_n, 1-based
    long long cum(int r) const { return r == 0 ? 0 : cum_[r - 1]; }  // M_r, M_0 = 0
    long long dim() const { return cum_.back(); }

    /// Block [lo, hi] as 1-based inclusive bounds.
    std::pair<long long, long long> block(int n) const {
        return {cum(n - 1) + 1, cum(n)};
    }

    /// B_m = min{ r : m <= M_r }, so that M_{B_m - 1} < m <= M_{B_m}.
    int right_inverse(long long m) const;

    /// Averaging projection (P_sigma f, Q_sigma f). The input is read as
    /// zero-padded; outputs extend to the end of the last block touched by f,
    /// since the block average spreads over the whole block.
    std::pair<Vec, Vec> averaging(std::span<const double> f) const;

    const std::vector<long long>& sizes() const { return sizes_; }
    const std::vector<long long>& cumulative() const { return cum_; }

private:
    explicit OrderedPartition(std::vector<long long> sizes);

    std::vector<long long> sizes_, cum_;
};

/// Concave increasing profile with a closed-form inverse, used to generate
/// partitions whose right inverse grows as phi(log_b m).
///
/// Forms: affine phi(t) = a + slope*t; power phi(t) = 1 + t^alpha (0 < alpha
/// <= 1); log phi(t) = 1 + log(1 + t). The inverse psi is clamped at 0 below
/// phi(0); degenerate partitions are rejected at construction instead.
class ConcaveSpec {
public:
    static ConcaveSpec affine(double a, double slope, double base);
    static ConcaveSpec power(double alpha, double base);
    static ConcaveSpec log_form(double base);

    double phi(double t) const;
    double psi(double u) const;
    double base() const { return base_; }

    /// C = base^(psi(2)/2); the generator requires C > 2.
    double growth_constant() const;

    std::string describe() const;

private:
    enum class Form { Affine, Power, Log };
    ConcaveSpec(Form form, double a, double b, double base);
    void validate() const;

    Form form_;
    double a_, b_;  // form parameters
    double base_;
};

/// Partition with cumulative sums M_r = floor(base^psi(r)), r = 1..r_max.
/// Construction verifies (C-1)M_r <= M_{r+1} and M_r <= (M_{r+1}-M_r)/(C-2).
OrderedPartition partition_from_concave(const ConcaveSpec& spec, int r_max);

/// The triple (X, S, sigma): a conditional basis X, a locally convex
/// subsymmetric space S, and an ordered partition. Evaluates the dual block
/// functionals v_n^* and the quasi-norm ||Q_sigma f||_S + ||H f||_X whose
/// completion carries the constructed almost greedy unit vector system.
class DkkSpace {
public:
    DkkSpace(SpaceSpec S, BasisRep X, OrderedPartition sigma);

    int dim() const { return static_cast<int>(sigma_.dim()); }
    const SpaceSpec& symmetric_space() const { return s_; }
    const BasisRep& conditional_basis() const { return x_; }
    const OrderedPartition& partition() const { return sigma_; }

    double lambda(int n) const { return lambda_[n - 1]; }            // Lambda_{N_n}
    double lambda_dual(int n) const { return lambda_dual_[n - 1]; }  // Lambda*_{N_n}

    /// (v_n^*(f))_n with v_n^*(f) = (sum over sigma_n of f_j) / Lambda*_{N_n}.
    Vec dual_coeffs(std::span<const double> f) const;

    /// ||Q_sigma f||_S + ||sum v_n^*(f) x_n||_X.
    double norm(std::span<const double> f) const;

    NormFn norm_fn() const;

private:
    SpaceSpec s_;
    BasisRep x_;
    OrderedPartition sigma_;
    std::vector<double> lambda_, lambda_dual_;
};

/// Fitted constants and suprema for the partial-sum regularity estimates of a
/// positive sequence against a block-size profile.
struct RegularitySumReport {
    double alpha;       // largest fitted alpha with Gamma_n / n^alpha nondecreasing
    double c1;          // observed max of (Gamma_n/n^a)/(Gamma_m/m^a), n <= m
    double c2;          // max_r M_r / N_r
    double t;           // c2 / (1 + c2)
    int b;              // smallest integer with M_r <= b N_r
    double sup_head;    // sup_r sum_{n<=r} (Gamma_{N_n}/Gamma_{N_r})^p
    double sup_tail;    // sup_r sum_{n>=r} (Gamma_{N_r}/Gamma_{N_n})^p
    double head_bound;  // c1^p c2^p / (1 - t^{p(1-alpha)})
    double tail_bound;  // c1^p c2^p / (1 - t^{p alpha})
    double adversarial_sum;    // sup_r sum_{n>=r} (Gamma_{m_n}/Gamma_{N_n})^q, m_n = M_r
    double adversarial_bound;  // b^q c1^q c2^q / (1 - t^{q alpha})
};

RegularitySumReport regularity_sums(const std::function<double(long long)>& gamma,
                                    const std::function<long long(int)>& block_size, double p,
                                    int r_max);

}  // namespace greedylab

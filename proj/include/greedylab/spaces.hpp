#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "greedylab/core.hpp"

namespace greedylab {

/// Extended exponent in (0, inf]; inf follows the c_0 convention (sup norm).
struct Exponent {
    double value;

    Exponent(double v = 2.0) : value(v) { validate(); }
    bool is_inf() const { return value == kInf; }
    void validate() const;
};

/// Weight sequence with w_1 > 0, w_n >= 0, and cached primitive sums s_n.
class Weight {
public:
    explicit Weight(std::vector<double> w);

    std::size_t size() const { return w_.size(); }
    double w(std::size_t n) const { return w_[n - 1]; }  // 1-based
    double s(std::size_t n) const { return s_[n - 1]; }
    const std::vector<double>& raw() const { return w_; }

    /// True when the primitive s_n is concave, i.e. w is nonincreasing.
    bool concave_primitive() const;

private:
    std::vector<double> w_, s_;
};

namespace space {
struct Lp {
    Exponent p;
};
struct Lorentz {
    Exponent q;
    Weight w;
};
struct WeakLorentz {
    Weight w;
};
/// l_q(l_p) truncation: consecutive inner blocks of fixed length, outer l_q.
struct MixedZ {
    Exponent p, q;
    int inner;
};
/// (+)_n l_p^{d_n} in the l_q sense; d_n nondecreasing, sum d_n >= dim.
struct MixedB {
    Exponent p, q;
    std::vector<long long> block_sizes;
};
/// l_p (+) l_q with alternating coordinates (odd -> l_p, even -> l_q) and
/// sum aggregation of the two component norms.
struct DirectSumD {
    Exponent p, q;
};
}  // namespace space

/// Descriptor of a finite-truncation sequence-space quasi-norm.
class SpaceSpec {
public:
    using Kind = std::variant<space::Lp, space::Lorentz, space::WeakLorentz, space::MixedZ,
                              space::MixedB, space::DirectSumD>;

    static SpaceSpec lp(double p, int dim);
    static SpaceSpec lorentz(double q, Weight w, int dim);
    static SpaceSpec weak_lorentz(Weight w, int dim);
    static SpaceSpec mixed_z(double p, double q, int inner, int dim);
    static SpaceSpec mixed_b(double p, double q, std::vector<long long> block_sizes, int dim);
    static SpaceSpec direct_sum_d(double p, double q, int dim);

    int dim() const { return dim_; }
    const Kind& kind() const { return kind_; }

    /// Quasi-norm of f in the finite truncation. Vectors shorter than dim()
    /// are zero-padded; longer vectors are rejected.
    double norm(std::span<const double> f) const;

    /// (Lambda_m, Lambda*_m) of the unit vector system; rearrangement-invariant
    /// specs only.
    std::pair<double, double> fundamental_pair(int m) const;

    bool rearrangement_invariant() const;

    /// True for the spaces admitted as the S side of a DKK construction:
    /// l_q with q >= 1 (c_0 included) or a Lorentz space with q >= 1 and
    /// concave primitive.
    bool locally_convex() const;

    /// Largest r with the norm r-subadditive on this truncation (1 for Banach
    /// spaces; min(p, 1) style for the quasi-Banach specs).
    double convexity_exponent() const;

    std::string describe() const;

private:
    SpaceSpec(Kind kind, int dim);

    Kind kind_;
    int dim_;
};

/// (sum |f_i|^p)^{1/p}, sup norm when p = inf.
double lp_norm(std::span<const double> f, double p);

enum class RegularityKind { LRP, URP, Doubling };

struct RegularityResult {
    bool pass;
    long long first_violation;  // 0 when pass
};

/// LRP: 2*G_m <= G_{bm}; URP: 2*G_{bm} <= b*G_m; Doubling: G_{2m} <= C*G_m.
/// Checks all 1 <= m <= m_max; gamma must be long enough (b*m_max, resp. 2*m_max).
RegularityResult check_regularity(std::span<const double> gamma, RegularityKind kind, int b,
                                  long long m_max, double doubling_c = 2.0);

}  // namespace greedylab

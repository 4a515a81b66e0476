#include "greedylab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greedylab {

void Exponent::validate() const {
    if (!(value > 0.0)) throw validation_error("exponent must be positive");
}

Weight::Weight(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) throw validation_error("weight must be nonempty");
    if (!(w_[0] > 0.0)) throw validation_error("weight requires w_1 > 0");
    s_.resize(w_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (w_[i] < 0.0) throw validation_error("weight entries must be nonnegative");
        acc += w_[i];
        s_[i] = acc;
    }
}

bool Weight::concave_primitive() const {
    for (std::size_t i = 1; i < w_.size(); ++i)
        if (w_[i] > w_[i - 1] + 1e-12 * std::max(1.0, w_[i - 1])) return false;
    return true;
}

double lp_norm(std::span<const double> f, double p) {
    if (p == kInf) {
        double m = 0.0;
        for (double x : f) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double x : f) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double x : f) s += x * x;
        return std::sqrt(s);
    }
    if (p == 0.5) {
        double s = 0.0;
        for (double x : f) s += std::sqrt(std::abs(x));
        return s * s;
    }
    double s = 0.0;
    for (double x : f) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

namespace {

// Non-increasing rearrangement of |f| into scratch.
void abs_decreasing(std::span<const double> f, std::vector<double>& out) {
    out.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
    std::sort(out.begin(), out.end(), std::greater<double>());
}

double lorentz_norm(std::span<const double> f, double q, const Weight& w) {
    thread_local std::vector<double> sorted;
    abs_decreasing(f, sorted);
    if (q == kInf) {
        double sup = 0.0;
        for (std::size_t n = 1; n <= sorted.size(); ++n)
            sup = std::max(sup, sorted[n - 1] * w.s(n));
        return sup;
    }
    double acc = 0.0;
    for (std::size_t n = 1; n <= sorted.size(); ++n) {
        if (sorted[n - 1] == 0.0) break;
        if (w.w(n) == 0.0) continue;
        acc += std::pow(w.s(n) * sorted[n - 1], q) * (w.w(n) / w.s(n));
    }
    if (q == 1.0) return acc;
    if (q == 0.5) return acc * acc;
    return std::pow(acc, 1.0 / q);
}

double weak_lorentz_norm(std::span<const double> f, const Weight& w) {
    thread_local std::vector<double> sorted;
    abs_decreasing(f, sorted);
    double sup = 0.0;
    for (std::size_t n = 1; n <= sorted.size(); ++n) sup = std::max(sup, sorted[n - 1] * w.s(n));
    return sup;
}

// Outer l_q aggregation of a stream of inner block norms.
class OuterAgg {
public:
    explicit OuterAgg(double q) : q_(q) {}
    void add(double block_norm) {
        if (q_ == kInf)
            acc_ = std::max(acc_, block_norm);
        else if (q_ == 1.0)
            acc_ += block_norm;
        else if (q_ == 2.0)
            acc_ += block_norm * block_norm;
        else if (q_ == 0.5)
            acc_ += std::sqrt(block_norm);
        else
            acc_ += std::pow(block_norm, q_);
    }
    double value() const {
        if (q_ == kInf || q_ == 1.0) return acc_;
        if (q_ == 2.0) return std::sqrt(acc_);
        if (q_ == 0.5) return acc_ * acc_;
        return std::pow(acc_, 1.0 / q_);
    }

private:
    double q_;
    double acc_ = 0.0;
};

}  // namespace

SpaceSpec::SpaceSpec(Kind kind, int dim) : kind_(std::move(kind)), dim_(dim) {
    if (dim_ < 1) throw validation_error("space dimension must be >= 1");
}

SpaceSpec SpaceSpec::lp(double p, int dim) { return SpaceSpec(space::Lp{Exponent(p)}, dim); }

SpaceSpec SpaceSpec::lorentz(double q, Weight w, int dim) {
    if (static_cast<int>(w.size()) < dim)
        throw validation_error("lorentz weight shorter than dimension");
    return SpaceSpec(space::Lorentz{Exponent(q), std::move(w)}, dim);
}

SpaceSpec SpaceSpec::weak_lorentz(Weight w, int dim) {
    if (static_cast<int>(w.size()) < dim)
        throw validation_error("weak lorentz weight shorter than dimension");
    return SpaceSpec(space::WeakLorentz{std::move(w)}, dim);
}

SpaceSpec SpaceSpec::mixed_z(double p, double q, int inner, int dim) {
    if (inner < 1) throw validation_error("mixed_z inner block length must be >= 1");
    return SpaceSpec(space::MixedZ{Exponent(p), Exponent(q), inner}, dim);
}

SpaceSpec SpaceSpec::mixed_b(double p, double q, std::vector<long long> block_sizes, int dim) {
    long long total = 0;
    long long prev = 0;
    for (long long d : block_sizes) {
        if (d < 1) throw validation_error("mixed_b block sizes must be positive");
        if (d < prev) throw validation_error("mixed_b block sizes must be nondecreasing");
        prev = d;
        total += d;
    }
    if (total < dim) throw validation_error("mixed_b block sizes do not cover the dimension");
    return SpaceSpec(space::MixedB{Exponent(p), Exponent(q), std::move(block_sizes)}, dim);
}

SpaceSpec SpaceSpec::direct_sum_d(double p, double q, int dim) {
    return SpaceSpec(space::DirectSumD{Exponent(p), Exponent(q)}, dim);
}

double SpaceSpec::norm(std::span<const double> f) const {
    if (static_cast<int>(f.size()) > dim_)
        throw validation_error("vector longer than space dimension");
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, space::Lp>) {
                return lp_norm(f, k.p.value);
            } else if constexpr (std::is_same_v<T, space::Lorentz>) {
                return lorentz_norm(f, k.q.value, k.w);
            } else if constexpr (std::is_same_v<T, space::WeakLorentz>) {
                return weak_lorentz_norm(f, k.w);
            } else if constexpr (std::is_same_v<T, space::MixedZ>) {
                OuterAgg agg(k.q.value);
                for (std::size_t lo = 0; lo < f.size(); lo += k.inner) {
                    const std::size_t hi = std::min(f.size(), lo + k.inner);
                    agg.add(lp_norm(f.subspan(lo, hi - lo), k.p.value));
                }
                return agg.value();
            } else if constexpr (std::is_same_v<T, space::MixedB>) {
                OuterAgg agg(k.q.value);
                std::size_t lo = 0;
                for (long long d : k.block_sizes) {
                    if (lo >= f.size()) break;
                    const std::size_t hi = std::min(f.size(), lo + static_cast<std::size_t>(d));
                    agg.add(lp_norm(f.subspan(lo, hi - lo), k.p.value));
                    lo = hi;
                }
                return agg.value();
            } else {
                static_assert(std::is_same_v<T, space::DirectSumD>);
                thread_local std::vector<double> part1, part2;
                part1.clear();
                part2.clear();
                for (std::size_t i = 0; i < f.size(); ++i)
                    (i % 2 == 0 ? part1 : part2).push_back(f[i]);
                return lp_norm(part1, k.p.value) + lp_norm(part2, k.q.value);
            }
        },
        kind_);
}

bool SpaceSpec::rearrangement_invariant() const {
    return std::holds_alternative<space::Lp>(kind_) ||
           std::holds_alternative<space::Lorentz>(kind_) ||
           std::holds_alternative<space::WeakLorentz>(kind_);
}

std::pair<double, double> SpaceSpec::fundamental_pair(int m) const {
    if (m < 1 || m > dim_) throw validation_error("fundamental_pair: m out of range");
    if (!rearrangement_invariant())
        throw validation_error("fundamental_pair requires a rearrangement-invariant space");
    double lambda;
    if (const auto* lp = std::get_if<space::Lp>(&kind_)) {
        lambda = lp->p.is_inf() ? 1.0 : lp_norm(std::vector<double>(m, 1.0), lp->p.value);
    } else if (const auto* lo = std::get_if<space::Lorentz>(&kind_)) {
        if (lo->q.value == 1.0)
            lambda = lo->w.s(m);  // exact shortcut
        else
            lambda = norm(std::vector<double>(m, 1.0));
    } else {
        lambda = std::get<space::WeakLorentz>(kind_).w.s(m);
    }
    return {lambda, static_cast<double>(m) / lambda};
}

bool SpaceSpec::locally_convex() const {
    if (const auto* lp = std::get_if<space::Lp>(&kind_)) return lp->p.value >= 1.0;
    if (const auto* lo = std::get_if<space::Lorentz>(&kind_))
        return lo->q.value >= 1.0 && lo->w.concave_primitive();
    return false;
}

double SpaceSpec::convexity_exponent() const {
    return std::visit(
        [](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, space::Lp>) {
                return std::min(k.p.value, 1.0);
            } else if constexpr (std::is_same_v<T, space::Lorentz>) {
                return std::min(k.q.value, 1.0);
            } else if constexpr (std::is_same_v<T, space::WeakLorentz>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, space::DirectSumD>) {
                return std::min({k.p.value, k.q.value, 1.0});
            } else {
                return std::min({k.p.value, k.q.value, 1.0});
            }
        },
        kind_);
}

std::string SpaceSpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, space::Lp>)
                os << "lp(p=" << k.p.value << ")";
            else if constexpr (std::is_same_v<T, space::Lorentz>)
                os << "lorentz(q=" << k.q.value << ")";
            else if constexpr (std::is_same_v<T, space::WeakLorentz>)
                os << "weak_lorentz";
            else if constexpr (std::is_same_v<T, space::MixedZ>)
                os << "mixed_z(p=" << k.p.value << ",q=" << k.q.value << ",inner=" << k.inner
                   << ")";
            else if constexpr (std::is_same_v<T, space::MixedB>)
                os << "mixed_b(p=" << k.p.value << ",q=" << k.q.value << ")";
            else
                os << "direct_sum_d(p=" << k.p.value << ",q=" << k.q.value << ")";
        },
        kind_);
    os << "[dim=" << dim_ << "]";
    return os.str();
}

RegularityResult check_regularity(std::span<const double> gamma, RegularityKind kind, int b,
                                  long long m_max, double doubling_c) {
    const long long need = kind == RegularityKind::Doubling ? 2 * m_max
                                                            : static_cast<long long>(b) * m_max;
    if (static_cast<long long>(gamma.size()) < need)
        throw validation_error("check_regularity: gamma too short for requested range");
    if (kind != RegularityKind::Doubling && b < 1)
        throw validation_error("check_regularity: b must be a positive integer");
    const double slack = 1.0 + 1e-12;
    for (long long m = 1; m <= m_max; ++m) {
        const double gm = gamma[m - 1];
        bool ok = true;
        switch (kind) {
            case RegularityKind::LRP:
                ok = 2.0 * gm <= gamma[b * m - 1] * slack;
                break;
            case RegularityKind::URP:
                ok = 2.0 * gamma[b * m - 1] <= b * gm * slack;
                break;
            case RegularityKind::Doubling:
                ok = gamma[2 * m - 1] <= doubling_c * gm * slack;
                break;
        }
        if (!ok) return {false, m};
    }
    return {true, 0};
}

}  // namespace greedylab

#include "greedylab/dkk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greedylab {

OrderedPartition::OrderedPartition(std::vector<long long> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw validation_error("partition needs at least one block");
    cum_.resize(sizes_.size());
    long long acc = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (sizes_[i] < 1) throw validation_error("partition block sizes must be positive");
        acc += sizes_[i];
        cum_[i] = acc;
    }
}

OrderedPartition OrderedPartition::from_sizes(std::vector<long long> sizes) {
    return OrderedPartition(std::move(sizes));
}

int OrderedPartition::right_inverse(long long m) const {
    if (m < 1 || m > dim()) throw validation_error("right_inverse: m out of range");
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), m);
    return static_cast<int>(it - cum_.begin()) + 1;
}

std::pair<Vec, Vec> OrderedPartition::averaging(std::span<const double> f) const {
    if (static_cast<long long>(f.size()) > dim())
        throw validation_error("averaging: vector longer than partition");
    if (f.empty()) return {Vec{}, Vec{}};
    const int r_last = right_inverse(static_cast<long long>(f.size()));
    const std::size_t full = static_cast<std::size_t>(cum(r_last));
    Vec pf(full, 0.0), qf(full, 0.0);
    std::size_t lo = 0;
    for (int n = 1; n <= r_last; ++n) {
        const std::size_t hi = lo + static_cast<std::size_t>(size(n));
        double sum = 0.0;
        for (std::size_t j = lo; j < hi && j < f.size(); ++j) sum += f[j];
        const double avg = sum / static_cast<double>(size(n));
        for (std::size_t j = lo; j < hi; ++j) {
            const double fj = j < f.size() ? f[j] : 0.0;
            pf[j] = avg;
            qf[j] = fj - avg;
        }
        lo = hi;
    }
    return {pf, qf};
}

ConcaveSpec::ConcaveSpec(Form form, double a, double b, double base)
    : form_(form), a_(a), b_(b), base_(base) {
    validate();
}

ConcaveSpec ConcaveSpec::affine(double a, double slope, double base) {
    return ConcaveSpec(Form::Affine, a, slope, base);
}
ConcaveSpec ConcaveSpec::power(double alpha, double base) {
    return ConcaveSpec(Form::Power, alpha, 0.0, base);
}
ConcaveSpec ConcaveSpec::log_form(double base) { return ConcaveSpec(Form::Log, 0.0, 0.0, base); }

double ConcaveSpec::phi(double t) const {
    switch (form_) {
        case Form::Affine:
            return a_ + b_ * t;
        case Form::Power:
            return 1.0 + std::pow(t, a_);
        case Form::Log:
            return 1.0 + std::log1p(t);
    }
    return 0.0;
}

double ConcaveSpec::psi(double u) const {
    double v = 0.0;
    switch (form_) {
        case Form::Affine:
            v = (u - a_) / b_;
            break;
        case Form::Power:
            v = std::pow(std::max(0.0, u - 1.0), 1.0 / a_);
            break;
        case Form::Log:
            v = std::expm1(u - 1.0);
            break;
    }
    return std::max(0.0, v);
}

double ConcaveSpec::growth_constant() const { return std::pow(base_, psi(2.0) / 2.0); }

void ConcaveSpec::validate() const {
    if (!(base_ > 1.0)) throw validation_error("concave spec needs base > 1");
    switch (form_) {
        case Form::Affine:
            if (!(a_ >= 1.0)) throw validation_error("affine phi needs phi(0) >= 1");
            if (!(b_ > 0.0)) throw validation_error("affine phi needs positive slope");
            break;
        case Form::Power:
            if (!(a_ > 0.0 && a_ <= 1.0))
                throw validation_error("power phi needs 0 < alpha <= 1");
            break;
        case Form::Log:
            break;
    }
    // Increasing and concave on a coarse grid; closed forms make this a
    // sanity check rather than a numerical inversion.
    double prev = phi(0.0);
    double prev_diff = kInf;
    for (int i = 1; i <= 64; ++i) {
        const double t = 0.25 * i;
        const double cur = phi(t);
        const double diff = cur - prev;
        if (!(diff > 0.0)) throw validation_error("phi must be increasing");
        if (diff > prev_diff * (1.0 + 1e-9)) throw validation_error("phi must be concave");
        prev_diff = diff;
        prev = cur;
    }
    if (!(growth_constant() > 2.0))
        throw validation_error("partition generator requires base^(psi(2)/2) > 2");
}

std::string ConcaveSpec::describe() const {
    std::ostringstream os;
    switch (form_) {
        case Form::Affine:
            os << "affine(" << a_ << "," << b_ << ")";
            break;
        case Form::Power:
            os << "power(" << a_ << ")";
            break;
        case Form::Log:
            os << "log";
            break;
    }
    os << " base=" << base_;
    return os.str();
}

OrderedPartition partition_from_concave(const ConcaveSpec& spec, int r_max) {
    if (r_max < 2) throw validation_error("partition_from_concave needs r_max >= 2");
    std::vector<long long> cum(r_max);
    for (int r = 1; r <= r_max; ++r) {
        const double value = std::pow(spec.base(), spec.psi(static_cast<double>(r)));
        if (value >= 9.0e18) throw validation_error("partition cumulative sum overflows");
        cum[r - 1] = static_cast<long long>(std::floor(value));
        if (cum[r - 1] < 1 || (r > 1 && cum[r - 1] <= cum[r - 2]))
            throw validation_error("concave profile yields a nonmonotone partition");
    }
    const double c = spec.growth_constant();
    for (int r = 1; r + 1 <= r_max; ++r) {
        const double mr = static_cast<double>(cum[r - 1]);
        const double mr1 = static_cast<double>(cum[r]);
        if (!((c - 1.0) * mr <= mr1 * (1.0 + 1e-9)))
            throw validation_error("partition violates (C-1) M_r <= M_{r+1}");
        if (!(mr <= (mr1 - mr) / (c - 2.0) * (1.0 + 1e-9)))
            throw validation_error("partition violates M_r <= (M_{r+1}-M_r)/(C-2)");
    }
    std::vector<long long> sizes(r_max);
    for (int r = 1; r <= r_max; ++r) sizes[r - 1] = cum[r - 1] - (r > 1 ? cum[r - 2] : 0);
    return OrderedPartition::from_sizes(std::move(sizes));
}

DkkSpace::DkkSpace(SpaceSpec S, BasisRep X, OrderedPartition sigma)
    : s_(std::move(S)), x_(std::move(X)), sigma_(std::move(sigma)) {
    if (!s_.locally_convex())
        throw validation_error("DKK construction requires a locally convex symmetric space");
    if (!s_.rearrangement_invariant())
        throw validation_error("DKK construction requires a rearrangement-invariant space");
    if (s_.dim() < dim()) throw validation_error("S truncation smaller than the partition");
    if (x_.dim() < sigma_.blocks())
        throw validation_error("X needs at least one basis vector per block");
    lambda_.resize(sigma_.blocks());
    lambda_dual_.resize(sigma_.blocks());
    for (int n = 1; n <= sigma_.blocks(); ++n) {
        const auto [lam, dual] = s_.fundamental_pair(static_cast<int>(sigma_.size(n)));
        lambda_[n - 1] = lam;
        lambda_dual_[n - 1] = dual;
    }
}

Vec DkkSpace::dual_coeffs(std::span<const double> f) const {
    if (static_cast<int>(f.size()) > dim())
        throw validation_error("vector longer than the DKK dimension");
    Vec out(sigma_.blocks(), 0.0);
    std::size_t lo = 0;
    for (int n = 1; n <= sigma_.blocks() && lo < f.size(); ++n) {
        const std::size_t hi = std::min(f.size(), lo + static_cast<std::size_t>(sigma_.size(n)));
        double sum = 0.0;
        for (std::size_t j = lo; j < hi; ++j) sum += f[j];
        out[n - 1] = sum / lambda_dual_[n - 1];
        lo = hi;
    }
    return out;
}

double DkkSpace::norm(std::span<const double> f) const {
    if (static_cast<int>(f.size()) > dim())
        throw validation_error("vector longer than the DKK dimension");
    if (f.empty()) return 0.0;
    const int r_last = sigma_.right_inverse(static_cast<long long>(f.size()));
    const std::size_t full = static_cast<std::size_t>(sigma_.cum(r_last));
    thread_local std::vector<double> qf;
    qf.resize(full);
    Vec dual(static_cast<std::size_t>(sigma_.blocks()), 0.0);
    std::size_t lo = 0;
    for (int n = 1; n <= r_last; ++n) {
        const std::size_t hi = lo + static_cast<std::size_t>(sigma_.size(n));
        double sum = 0.0;
        for (std::size_t j = lo; j < hi && j < f.size(); ++j) sum += f[j];
        const double avg = sum / static_cast<double>(sigma_.size(n));
        for (std::size_t j = lo; j < hi; ++j) qf[j] = (j < f.size() ? f[j] : 0.0) - avg;
        dual[n - 1] = sum / lambda_dual_[n - 1];
        lo = hi;
    }
    const double s_part = s_.norm(qf);  // before basis_norm may reuse the scratch
    return s_part + x_.basis_norm(dual);
}

NormFn DkkSpace::norm_fn() const {
    // Shared-state-free: the evaluator keeps its own copy of the space.
    auto self = std::make_shared<DkkSpace>(*this);
    return [self](std::span<const double> f) { return self->norm(f); };
}

namespace {

double fit_alpha(const std::vector<std::pair<long long, double>>& samples) {
    // Largest alpha in (0, 1) keeping Gamma_n / n^alpha nondecreasing over the
    // sampled indices, up to a hair of slack for roundoff.
    auto nondecreasing = [&](double alpha) {
        double prev = -kInf;
        for (const auto& [n, g] : samples) {
            const double v = g / std::pow(static_cast<double>(n), alpha);
            if (v < prev * (1.0 - 1e-12)) return false;
            prev = v;
        }
        return true;
    };
    double lo = 0.0, hi = 1.0;
    if (!nondecreasing(1e-9)) return 0.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (nondecreasing(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

RegularitySumReport regularity_sums(const std::function<double(long long)>& gamma,
                                    const std::function<long long(int)>& block_size, double p,
                                    int r_max) {
    if (r_max < 1) throw validation_error("regularity_sums needs r_max >= 1");
    RegularitySumReport rep{};

    std::vector<long long> n_sizes(r_max), m_cum(r_max);
    long long acc = 0;
    for (int r = 1; r <= r_max; ++r) {
        n_sizes[r - 1] = block_size(r);
        if (n_sizes[r - 1] < 1) throw validation_error("block sizes must be positive");
        acc += n_sizes[r - 1];
        m_cum[r - 1] = acc;
    }

    std::vector<std::pair<long long, double>> samples;
    for (long long n = 1; n <= 64; ++n) samples.emplace_back(n, gamma(n));
    for (int r = 1; r <= r_max; ++r) {
        samples.emplace_back(n_sizes[r - 1], gamma(n_sizes[r - 1]));
        samples.emplace_back(m_cum[r - 1], gamma(m_cum[r - 1]));
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    rep.alpha = fit_alpha(samples);
    rep.c1 = 1.0;
    double prev_best = kInf;
    // c1 = max over n <= m of (G_n/n^a)/(G_m/m^a); scan keeping the running min.
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        const double v = it->second / std::pow(static_cast<double>(it->first), rep.alpha);
        if (prev_best < kInf) rep.c1 = std::max(rep.c1, v / prev_best);
        prev_best = std::min(prev_best, v);
    }

    rep.c2 = 0.0;
    for (int r = 1; r <= r_max; ++r)
        rep.c2 = std::max(rep.c2, static_cast<double>(m_cum[r - 1]) /
                                      static_cast<double>(n_sizes[r - 1]));
    rep.t = rep.c2 / (1.0 + rep.c2);
    rep.b = static_cast<int>(std::ceil(rep.c2 - 1e-12));

    auto gamma_block = [&](int n) { return gamma(n_sizes[n - 1]); };

    rep.sup_head = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        double sum = 0.0;
        for (int n = 1; n <= r; ++n) sum += std::pow(gamma_block(n) / gamma_block(r), p);
        rep.sup_head = std::max(rep.sup_head, sum);
    }
    rep.sup_tail = 0.0;
    rep.adversarial_sum = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        double tail = 0.0, adv = 0.0;
        const double gamma_mr = gamma(m_cum[r - 1]);
        for (int n = r; n <= r_max; ++n) {
            tail += std::pow(gamma_block(r) / gamma_block(n), p);
            adv += std::pow(gamma_mr / gamma_block(n), p);
        }
        rep.sup_tail = std::max(rep.sup_tail, tail);
        rep.adversarial_sum = std::max(rep.adversarial_sum, adv);
    }

    const double c12 = std::pow(rep.c1 * rep.c2, p);
    rep.head_bound = c12 / (1.0 - std::pow(rep.t, p * (1.0 - rep.alpha)));
    rep.tail_bound = c12 / (1.0 - std::pow(rep.t, p * rep.alpha));
    rep.adversarial_bound =
        std::pow(static_cast<double>(rep.b), p) * c12 / (1.0 - std::pow(rep.t, p * rep.alpha));
    return rep;
}

}  // namespace greedylab

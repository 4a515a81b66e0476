#include "greedylab/bases.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <variant>

#include "greedylab/dkk.hpp"

namespace greedylab {

namespace {

struct UnitKind {
    SpaceSpec space;
};
struct DifferenceKind {
    double p;
    int dim;
};
struct InterleavedKind {
    std::vector<BasisRep> parts;
    int part_dim;
};
struct ConcatenatedKind {
    std::vector<BasisRep> parts;
    SpaceSpec outer;
    std::vector<int> offsets;  // offsets[k] = sum of dims of parts before k
};
struct DkkKind {
    std::shared_ptr<const DkkSpace> space;
};

}  // namespace

struct BasisRep::Impl {
    std::variant<UnitKind, DifferenceKind, InterleavedKind, ConcatenatedKind, DkkKind> kind;
    int dim;
};

BasisRep::BasisRep(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)), dim_(impl_->dim) {}

BasisRep BasisRep::unit_vectors(SpaceSpec space) {
    const int d = space.dim();
    return BasisRep(std::make_shared<Impl>(Impl{UnitKind{std::move(space)}, d}));
}

BasisRep BasisRep::difference(double p, int dim) {
    (void)Exponent(p);  // validate
    if (dim < 1) throw validation_error("difference system needs dim >= 1");
    return BasisRep(std::make_shared<Impl>(Impl{DifferenceKind{p, dim}, dim}));
}

BasisRep BasisRep::interleaved(std::vector<BasisRep> parts) {
    if (parts.empty()) throw validation_error("interleaved needs at least one part");
    const int part_dim = parts.front().dim();
    for (const auto& part : parts)
        if (part.dim() != part_dim)
            throw validation_error("interleaved parts must share one dimension");
    const int total = part_dim * static_cast<int>(parts.size());
    return BasisRep(std::make_shared<Impl>(Impl{InterleavedKind{std::move(parts), part_dim}, total}));
}

BasisRep BasisRep::concatenated(std::vector<BasisRep> parts, SpaceSpec outer) {
    if (parts.empty()) throw validation_error("concatenated needs at least one part");
    if (outer.dim() < static_cast<int>(parts.size()))
        throw validation_error("outer lattice dimension smaller than the number of parts");
    std::vector<int> offsets;
    int total = 0;
    for (const auto& part : parts) {
        offsets.push_back(total);
        total += part.dim();
    }
    return BasisRep(std::make_shared<Impl>(
        Impl{ConcatenatedKind{std::move(parts), std::move(outer), std::move(offsets)}, total}));
}

BasisRep BasisRep::dkk(std::shared_ptr<const DkkSpace> space) {
    if (!space) throw validation_error("dkk basis needs a space");
    const int d = space->dim();
    return BasisRep(std::make_shared<Impl>(Impl{DkkKind{std::move(space)}, d}));
}

namespace {

// Scatter/gather between the global alternating layout and part k of N.
// Global index (1-based): (n-1)*N + k  <->  part k, inner index n.
void deinterleave(std::span<const double> global, int parts, int k, std::vector<double>& out) {
    out.clear();
    for (std::size_t j = static_cast<std::size_t>(k); j <= global.size(); j += parts)
        out.push_back(global[j - 1]);
}

}  // namespace

Vec BasisRep::synthesize(std::span<const double> a) const {
    if (static_cast<int>(a.size()) > dim_)
        throw validation_error("coefficient vector longer than basis dimension");
    return std::visit(
        [&](const auto& k) -> Vec {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, UnitKind> || std::is_same_v<T, DkkKind>) {
                return Vec(a.begin(), a.end());
            } else if constexpr (std::is_same_v<T, DifferenceKind>) {
                Vec out(a.size());
                for (std::size_t n = 0; n < a.size(); ++n) {
                    const double next = n + 1 < a.size() ? a[n + 1] : 0.0;
                    out[n] = a[n] - next;
                }
                return out;
            } else if constexpr (std::is_same_v<T, InterleavedKind>) {
                const int parts = static_cast<int>(k.parts.size());
                Vec out(a.size(), 0.0);
                std::vector<double> coeff, amb;
                for (int part = 1; part <= parts; ++part) {
                    deinterleave(a, parts, part, coeff);
                    amb = k.parts[part - 1].synthesize(coeff);
                    for (std::size_t n = 0; n < amb.size(); ++n)
                        out[n * parts + part - 1] = amb[n];
                }
                return out;
            } else {
                static_assert(std::is_same_v<T, ConcatenatedKind>);
                Vec out(a.size(), 0.0);
                for (std::size_t part = 0; part < k.parts.size(); ++part) {
                    const std::size_t lo = static_cast<std::size_t>(k.offsets[part]);
                    if (lo >= a.size()) break;
                    const std::size_t len =
                        std::min(a.size() - lo, static_cast<std::size_t>(k.parts[part].dim()));
                    const Vec amb = k.parts[part].synthesize(a.subspan(lo, len));
                    for (std::size_t n = 0; n < amb.size(); ++n) out[lo + n] = amb[n];
                }
                return out;
            }
        },
        impl_->kind);
}

Vec BasisRep::analyze(std::span<const double> f) const {
    if (static_cast<int>(f.size()) > dim_)
        throw validation_error("ambient vector longer than basis dimension");
    return std::visit(
        [&](const auto& k) -> Vec {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, UnitKind> || std::is_same_v<T, DkkKind>) {
                return Vec(f.begin(), f.end());
            } else if constexpr (std::is_same_v<T, DifferenceKind>) {
                // Telescoping inverse: a_n = sum_{j >= n} c_j.
                Vec out(f.size());
                double acc = 0.0;
                for (std::size_t n = f.size(); n-- > 0;) {
                    acc += f[n];
                    out[n] = acc;
                }
                return out;
            } else if constexpr (std::is_same_v<T, InterleavedKind>) {
                const int parts = static_cast<int>(k.parts.size());
                Vec out(f.size(), 0.0);
                std::vector<double> amb;
                for (int part = 1; part <= parts; ++part) {
                    deinterleave(f, parts, part, amb);
                    const Vec coeff = k.parts[part - 1].analyze(amb);
                    for (std::size_t n = 0; n < coeff.size(); ++n)
                        out[n * parts + part - 1] = coeff[n];
                }
                return out;
            } else {
                static_assert(std::is_same_v<T, ConcatenatedKind>);
                Vec out(f.size(), 0.0);
                for (std::size_t part = 0; part < k.parts.size(); ++part) {
                    const std::size_t lo = static_cast<std::size_t>(k.offsets[part]);
                    if (lo >= f.size()) break;
                    const std::size_t len =
                        std::min(f.size() - lo, static_cast<std::size_t>(k.parts[part].dim()));
                    const Vec coeff = k.parts[part].analyze(f.subspan(lo, len));
                    for (std::size_t n = 0; n < coeff.size(); ++n) out[lo + n] = coeff[n];
                }
                return out;
            }
        },
        impl_->kind);
}

double BasisRep::ambient_norm(std::span<const double> f) const {
    if (static_cast<int>(f.size()) > dim_)
        throw validation_error("ambient vector longer than basis dimension");
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, UnitKind>) {
                return k.space.norm(f);
            } else if constexpr (std::is_same_v<T, DifferenceKind>) {
                return lp_norm(f, k.p);
            } else if constexpr (std::is_same_v<T, DkkKind>) {
                return k.space->norm(f);
            } else if constexpr (std::is_same_v<T, InterleavedKind>) {
                // Direct sum with sum aggregation of the component norms.
                const int parts = static_cast<int>(k.parts.size());
                double total = 0.0;
                std::vector<double> amb;
                for (int part = 1; part <= parts; ++part) {
                    deinterleave(f, parts, part, amb);
                    total += k.parts[part - 1].ambient_norm(amb);
                }
                return total;
            } else {
                static_assert(std::is_same_v<T, ConcatenatedKind>);
                std::vector<double> part_norms(k.parts.size(), 0.0);
                for (std::size_t part = 0; part < k.parts.size(); ++part) {
                    const std::size_t lo = static_cast<std::size_t>(k.offsets[part]);
                    if (lo >= f.size()) break;
                    const std::size_t len =
                        std::min(f.size() - lo, static_cast<std::size_t>(k.parts[part].dim()));
                    part_norms[part] = k.parts[part].ambient_norm(f.subspan(lo, len));
                }
                return k.outer.norm(part_norms);
            }
        },
        impl_->kind);
}

double BasisRep::basis_norm(std::span<const double> a) const {
    if (std::holds_alternative<DkkKind>(impl_->kind)) {
        return std::get<DkkKind>(impl_->kind).space->norm(a);
    }
    return ambient_norm(synthesize(a));
}

NormFn BasisRep::norm_fn() const {
    BasisRep self = *this;
    return [self](std::span<const double> a) { return self.basis_norm(a); };
}

std::pair<double, double> BasisRep::element_norm_range() const {
    double lo = kInf, hi = 0.0;
    Vec unit(dim_, 0.0);
    for (int n = 0; n < dim_; ++n) {
        unit[n] = 1.0;
        const double v = basis_norm(unit);
        unit[n] = 0.0;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

BasisRep::Kind BasisRep::kind() const {
    if (std::holds_alternative<UnitKind>(impl_->kind)) return Kind::UnitVectors;
    if (std::holds_alternative<DifferenceKind>(impl_->kind)) return Kind::Difference;
    if (std::holds_alternative<InterleavedKind>(impl_->kind)) return Kind::Interleaved;
    if (std::holds_alternative<ConcatenatedKind>(impl_->kind)) return Kind::Concatenated;
    return Kind::Dkk;
}

const SpaceSpec& BasisRep::unit_space() const {
    if (const auto* k = std::get_if<UnitKind>(&impl_->kind)) return k->space;
    throw validation_error("unit_space: not a unit-vector basis");
}

double BasisRep::difference_exponent() const {
    if (const auto* k = std::get_if<DifferenceKind>(&impl_->kind)) return k->p;
    throw validation_error("difference_exponent: not a difference basis");
}

const std::vector<BasisRep>& BasisRep::parts() const {
    if (const auto* k = std::get_if<InterleavedKind>(&impl_->kind)) return k->parts;
    if (const auto* k = std::get_if<ConcatenatedKind>(&impl_->kind)) return k->parts;
    throw validation_error("parts: not a direct-sum basis");
}

const SpaceSpec& BasisRep::outer_space() const {
    if (const auto* k = std::get_if<ConcatenatedKind>(&impl_->kind)) return k->outer;
    throw validation_error("outer_space: not a concatenated basis");
}

std::shared_ptr<const DkkSpace> BasisRep::dkk_space() const {
    if (const auto* k = std::get_if<DkkKind>(&impl_->kind)) return k->space;
    throw validation_error("dkk_space: not a DKK basis");
}

std::string BasisRep::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, UnitKind>)
                os << "unit_vectors over " << k.space.describe();
            else if constexpr (std::is_same_v<T, DifferenceKind>)
                os << "difference(p=" << k.p << ")";
            else if constexpr (std::is_same_v<T, InterleavedKind>)
                os << "interleaved x" << k.parts.size();
            else if constexpr (std::is_same_v<T, ConcatenatedKind>)
                os << "concatenated x" << k.parts.size() << " over " << k.outer.describe();
            else
                os << "dkk unit vectors";
        },
        impl_->kind);
    os << "[dim=" << dim_ << "]";
    return os.str();
}

}  // namespace greedylab

#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace greedylab {

using Vec = std::vector<double>;

/// Thrown when an input violates a documented precondition or invariant.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an exhaustive enumeration would exceed the configured budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool rel_close(double a, double b, double tol) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

/// Enumeration budget, in norm evaluations. GREEDYLAB_BUDGET overrides the default.
inline std::uint64_t enumeration_budget() {
    if (const char* env = std::getenv("GREEDYLAB_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 50'000'000ull;
}

/// Sorted set of 1-based coordinate indices.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<int> indices);

    static IndexSet range(int lo, int hi);  // [lo, hi], empty if hi < lo

    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    int min() const;
    int max() const;
    bool contains(int j) const;
    const std::vector<int>& indices() const { return idx_; }

    IndexSet intersect(const IndexSet& other) const;
    IndexSet set_minus(const IndexSet& other) const;

    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

private:
    std::vector<int> idx_;
};

/// Zero every coefficient outside A. S_empty = 0, S_full = identity.
Vec coordinate_projection(std::span<const double> a, const IndexSet& A);

/// In-place variant writing into `out` (must have a.size() elements).
void coordinate_projection(std::span<const double> a, const IndexSet& A, std::span<double> out);

/// Norm evaluator over coefficient vectors.
using NormFn = std::function<double(std::span<const double>)>;

}  // namespace greedylab

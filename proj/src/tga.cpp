#include "greedylab/tga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace greedylab {

namespace {

// Indices sorted by |a| descending; ties by index, ascending or descending.
std::vector<int> magnitude_order(std::span<const double> a, TieRule tie) {
    std::vector<int> order(a.size());
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        const double ai = std::abs(a[i - 1]), aj = std::abs(a[j - 1]);
        if (ai != aj) return ai > aj;
        return tie == TieRule::LowestIndex ? i < j : i > j;
    });
    return order;
}

// Split for ties at the m-th magnitude: indices strictly above the threshold
// (forced) and indices exactly at it (candidates), plus the number of slots.
struct TieSplit {
    std::vector<int> forced;
    std::vector<int> tied;
    int slots;
};

TieSplit tie_split(std::span<const double> a, int m) {
    std::vector<int> order = magnitude_order(a, TieRule::LowestIndex);
    const double threshold = std::abs(a[order[m - 1] - 1]);
    TieSplit out;
    for (int j = 1; j <= static_cast<int>(a.size()); ++j) {
        const double v = std::abs(a[j - 1]);
        if (v > threshold)
            out.forced.push_back(j);
        else if (v == threshold)
            out.tied.push_back(j);
    }
    out.slots = m - static_cast<int>(out.forced.size());
    return out;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > cap) return cap + 1;
    }
    return c;
}

}  // namespace

IndexSet greedy_set(std::span<const double> a, int m, TieRule tie) {
    if (m < 0 || m > static_cast<int>(a.size()))
        throw validation_error("greedy_set: m out of range");
    if (m == 0) return IndexSet{};
    std::vector<int> order = magnitude_order(a, tie);
    order.resize(m);
    return IndexSet(std::move(order));
}

std::vector<IndexSet> all_greedy_sets(std::span<const double> a, int m, std::uint64_t max_sets) {
    if (m < 0 || m > static_cast<int>(a.size()))
        throw validation_error("all_greedy_sets: m out of range");
    if (m == 0) return {IndexSet{}};
    const TieSplit split = tie_split(a, m);
    const std::uint64_t count =
        binomial_capped(split.tied.size(), static_cast<std::uint64_t>(split.slots), max_sets);
    if (count > max_sets) throw budget_error("all_greedy_sets: tie combinations exceed budget");

    std::vector<IndexSet> out;
    std::vector<int> pick(split.slots);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<int> set = split.forced;
        for (int i : pick) set.push_back(split.tied[i]);
        out.emplace_back(std::move(set));
        // next combination
        int i = split.slots - 1;
        while (i >= 0 && pick[i] == static_cast<int>(split.tied.size()) - split.slots + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < split.slots; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

std::vector<IndexSet> greedy_set_family(std::span<const double> a, int m, std::uint64_t cap,
                                        Rng* rng) {
    if (m < 0 || m > static_cast<int>(a.size()))
        throw validation_error("greedy_set_family: m out of range");
    if (m == 0) return {IndexSet{}};
    const TieSplit split = tie_split(a, m);
    const std::uint64_t count =
        binomial_capped(split.tied.size(), static_cast<std::uint64_t>(split.slots), cap);
    if (count <= cap) return all_greedy_sets(a, m, cap);

    auto make = [&](const std::vector<int>& extra) {
        std::vector<int> set = split.forced;
        set.insert(set.end(), extra.begin(), extra.end());
        return IndexSet(std::move(set));
    };
    const auto& tied = split.tied;
    const int s = split.slots;
    std::vector<IndexSet> out;
    out.push_back(make({tied.begin(), tied.begin() + s}));          // lowest ties
    out.push_back(make({tied.end() - s, tied.end()}));              // highest ties
    std::vector<int> stride;
    for (std::size_t i = 0; i < tied.size() && static_cast<int>(stride.size()) < s; i += 2)
        stride.push_back(tied[i]);
    for (std::size_t i = 1; i < tied.size() && static_cast<int>(stride.size()) < s; i += 2)
        stride.push_back(tied[i]);
    out.push_back(make(stride));                                    // alternating ties
    std::vector<int> stride2;
    for (std::size_t i = 1; i < tied.size() && static_cast<int>(stride2.size()) < s; i += 2)
        stride2.push_back(tied[i]);
    for (std::size_t i = 0; i < tied.size() && static_cast<int>(stride2.size()) < s; i += 2)
        stride2.push_back(tied[i]);
    out.push_back(make(stride2));
    if (rng) {
        for (int extra = 0; extra < 4; ++extra) {
            std::vector<int> pool = tied;
            for (std::size_t i = pool.size(); i > 1; --i)
                std::swap(pool[i - 1], pool[rng->below(i)]);
            pool.resize(s);
            out.push_back(make(pool));
        }
    }
    return out;
}

GreedyRun greedy_residual_curve(const NormFn& normer, std::span<const double> a, int m_max,
                                TieRule tie, std::string normer_label) {
    if (m_max < 0 || m_max > static_cast<int>(a.size()))
        throw validation_error("greedy_residual_curve: m_max out of range");
    GreedyRun run;
    run.coefficients.assign(a.begin(), a.end());
    run.tie = tie;
    run.normer = std::move(normer_label);

    const std::vector<int> order = magnitude_order(a, tie);
    Vec residual(a.begin(), a.end());
    std::vector<int> kept;
    run.steps.push_back({0, IndexSet{}, normer(residual)});
    for (int m = 1; m <= m_max; ++m) {
        residual[order[m - 1] - 1] = 0.0;
        kept.push_back(order[m - 1]);
        run.steps.push_back({m, IndexSet(kept), normer(residual)});
    }
    return run;
}

}  // namespace greedylab

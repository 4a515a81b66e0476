#include "greedylab/core.hpp"

#include <algorithm>

namespace greedylab {

IndexSet::IndexSet(std::vector<int> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    for (std::size_t i = 0; i < idx_.size(); ++i) {
        if (idx_[i] < 1) throw validation_error("index sets are 1-based");
        if (i > 0 && idx_[i] == idx_[i - 1])
            throw validation_error("index set entries must be distinct");
    }
}

IndexSet IndexSet::range(int lo, int hi) {
    std::vector<int> v;
    for (int j = lo; j <= hi; ++j) v.push_back(j);
    return IndexSet(std::move(v));
}

int IndexSet::min() const {
    if (idx_.empty()) throw validation_error("min of empty index set");
    return idx_.front();
}

int IndexSet::max() const {
    if (idx_.empty()) throw validation_error("max of empty index set");
    return idx_.back();
}

bool IndexSet::contains(int j) const {
    return std::binary_search(idx_.begin(), idx_.end(), j);
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
    std::vector<int> out;
    std::set_intersection(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(),
                          std::back_inserter(out));
    return IndexSet(std::move(out));
}

IndexSet IndexSet::set_minus(const IndexSet& other) const {
    std::vector<int> out;
    std::set_difference(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(),
                        std::back_inserter(out));
    return IndexSet(std::move(out));
}

Vec coordinate_projection(std::span<const double> a, const IndexSet& A) {
    Vec out(a.size(), 0.0);
    coordinate_projection(a, A, out);
    return out;
}

void coordinate_projection(std::span<const double> a, const IndexSet& A, std::span<double> out) {
    if (out.size() != a.size()) throw validation_error("projection output size mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    for (int j : A) {
        if (j > static_cast<int>(a.size())) throw validation_error("projection index out of range");
        out[j - 1] = a[j - 1];
    }
}

}  // namespace greedylab

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "greedylab/core.hpp"
#include "greedylab/spaces.hpp"

namespace greedylab {

class DkkSpace;

/// A Schauder basis given as a synthesis/analysis pair over an ambient space.
///
/// Supported systems: unit vectors of a SpaceSpec, the difference system
/// d_n = e_n - e_{n-1} in l_p, interleaved direct sums (alternating index
/// map), concatenated direct sums over an outer lattice, and the unit vector
/// system of a DKK space. Coordinate functionals are implicit in analyze();
/// every basis here has a closed-form analysis at finite dimension.
class BasisRep {
public:
    static BasisRep unit_vectors(SpaceSpec space);
    static BasisRep difference(double p, int dim);
    static BasisRep interleaved(std::vector<BasisRep> parts);
    static BasisRep concatenated(std::vector<BasisRep> parts, SpaceSpec outer);
    static BasisRep dkk(std::shared_ptr<const DkkSpace> space);

    int dim() const { return dim_; }

    /// Ambient coefficients of sum a_n x_n. Input shorter than dim() is
    /// zero-padded; longer input is rejected.
    Vec synthesize(std::span<const double> a) const;

    /// Basis coefficients of an ambient vector; inverse of synthesize.
    Vec analyze(std::span<const double> f) const;

    /// Quasi-norm of an ambient vector in the declared ambient space.
    double ambient_norm(std::span<const double> f) const;

    /// norm(ambient, synthesize(a)).
    double basis_norm(std::span<const double> a) const;

    /// Coefficient-side norm evaluator, e.g. for the search routines.
    NormFn norm_fn() const;

    /// (min_n, max_n) of ||x_n|| over n <= dim; semi-normalization report.
    std::pair<double, double> element_norm_range() const;

    std::string describe() const;

    // Introspection, mainly for serialization.
    enum class Kind { UnitVectors, Difference, Interleaved, Concatenated, Dkk };
    Kind kind() const;
    const SpaceSpec& unit_space() const;                 // UnitVectors
    double difference_exponent() const;                  // Difference
    const std::vector<BasisRep>& parts() const;          // Interleaved / Concatenated
    const SpaceSpec& outer_space() const;                // Concatenated
    std::shared_ptr<const DkkSpace> dkk_space() const;   // Dkk

private:
    struct Impl;
    explicit BasisRep(std::shared_ptr<const Impl> impl);

    std::shared_ptr<const Impl> impl_;
    int dim_;
};

}  // namespace greedylab

#ifndef CAPSTRUCT_WASSERSTEIN_HPP
#define CAPSTRUCT_WASSERSTEIN_HPP

#include <span>
#include <string>
#include <vector>

#include "capstruct/panel.hpp"

namespace capstruct {

/// Finite distribution: support values with nonnegative weights summing to 1.
struct DiscreteDistribution {
    std::vector<double> values;
    std::vector<double> weights;

    /// Validates lengths, nonnegativity, and unit total weight (1e-12).
    static DiscreteDistribution make(std::vector<double> values, std::vector<double> weights);

    /// Uniform weights over the given values.
    static DiscreteDistribution uniform(std::vector<double> values);

    std::size_t size() const { return values.size(); }
};

/// Symmetric nonnegative distances between labeled items (months).
struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<double> entries; // n x n, row-major

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return entries[i * labels.size() + j]; }

    /// Throws ContractError unless symmetric (1e-12), zero-diagonal, nonnegative.
    void validate() const;
};

/// Exact 1-Wasserstein distance between two discrete distributions, by
/// integrating |F^-1 - G^-1| over the merged quantile partition. Handles
/// unequal support sizes and non-uniform weights; zero-weight points are
/// dropped first (distance-invariant).
double wasserstein(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Closed form for equal-size uniform-weight supports:
/// (1/n) sum_i |sorted(a)_i - sorted(b)_i|.
double wasserstein_equal_n(std::span<const double> vals_a, std::span<const double> vals_b);

/// Present caps of month t divided by their sum, with uniform weights.
DiscreteDistribution normalized_cap_distribution(const CapPanel& caps, std::size_t t);

/// All pairwise Wasserstein distances. `threads` 0 = hardware concurrency.
DistanceMatrix distance_matrix(const std::vector<DiscreteDistribution>& dists,
                               std::vector<std::string> labels,
                               unsigned threads = 1);

} // namespace capstruct

#endif // CAPSTRUCT_WASSERSTEIN_HPP

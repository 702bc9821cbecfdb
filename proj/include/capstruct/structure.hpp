#ifndef CAPSTRUCT_STRUCTURE_HPP
#define CAPSTRUCT_STRUCTURE_HPP

#include <span>
#include <string>
#include <vector>

#include "capstruct/panel.hpp"

namespace capstruct {

/// Date-indexed table of named metric series, no missing values.
struct SeriesOutput {
    std::vector<Date> index;
    std::vector<std::string> names;
    std::vector<double> values; // |index| x |names|, row-major

    double at(std::size_t row, std::size_t col) const { return values[row * names.size() + col]; }
    std::size_t rows() const { return index.size(); }
    std::size_t cols() const { return names.size(); }
};

/// Piecewise-linear Lorenz curve through n+1 vertices from (0,0) to (1,1).
struct LorenzCurve {
    std::vector<std::pair<double, double>> points;

    /// Trapezoidal area under the curve.
    double area() const;
};

enum class MissingPolicy { DropPerMonth, FullHistoryOnly };

/// Share of the total held by the k largest values. k >= n gives 1.
/// Throws UndefinedValueError when all values are zero.
double concentration_ratio(std::span<const double> values, std::size_t k);

/// Gini coefficient of nonnegative values, in [0, (n-1)/n].
/// Sorted O(n log n) identity; the pairwise double sum is kept as a test oracle.
double gini(std::span<const double> values);

/// Lorenz curve vertices: abscissa i/n, ordinate the cumulative share of the
/// i smallest values.
LorenzCurve lorenz_curve(std::span<const double> values);

/// One CR_k column per requested k, one row per month; missing caps count as 0.
SeriesOutput concentration_series(const CapPanel& caps, const std::vector<std::size_t>& ks);

/// Monthly Gini under the chosen missing-data policy.
SeriesOutput gini_series(const CapPanel& caps, MissingPolicy policy);

} // namespace capstruct

#endif // CAPSTRUCT_STRUCTURE_HPP

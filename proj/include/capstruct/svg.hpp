#ifndef CAPSTRUCT_SVG_HPP
#define CAPSTRUCT_SVG_HPP

#include <string>
#include <vector>

#include "capstruct/cluster.hpp"
#include "capstruct/structure.hpp"
#include "capstruct/wasserstein.hpp"

namespace capstruct::svg {

/// Multi-series line chart over a date index. One polyline per column of
/// `series`, values in column-major order per SeriesOutput layout.
std::string line_chart(const SeriesOutput& series, const std::string& title);

/// Color-mapped matrix. `order` permutes rows and columns (dendrogram leaf
/// order for the reordered heatmaps); pass an empty vector for identity.
std::string heatmap(const DistanceMatrix& matrix, const std::vector<std::size_t>& order,
                    const std::string& title);

/// Generic value-grid heatmap (weights over time): rows labeled by date
/// strings, columns by asset names.
std::string grid_heatmap(const std::vector<std::string>& row_labels,
                         const std::vector<std::string>& col_labels,
                         const std::vector<double>& values,
                         const std::string& title);

/// Classic orthogonal dendrogram, leaves on the x axis.
std::string dendrogram(const Dendrogram& dend, const std::string& title);

} // namespace capstruct::svg

#endif // CAPSTRUCT_SVG_HPP

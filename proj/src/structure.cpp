#include "capstruct/structure.hpp"

#include <algorithm>
#include <numeric>

#include "capstruct/errors.hpp"

namespace capstruct {

namespace {

double checked_total(std::span<const double> values) {
    if (values.empty()) {
        throw UndefinedValueError("empty value set");
    }
    double total = 0.0;
    for (double v : values) {
        if (v < 0.0) {
            throw ContractError("negative value in nonnegative input");
        }
        total += v;
    }
    if (total <= 0.0) {
        throw UndefinedValueError("all values are zero; ratio undefined");
    }
    return total;
}

} // namespace

double LorenzCurve::area() const {
    double a = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        a += (points[i].first - points[i - 1].first) *
             (points[i].second + points[i - 1].second) * 0.5;
    }
    return a;
}

double concentration_ratio(std::span<const double> values, std::size_t k) {
    if (k == 0) {
        throw ContractError("k must be >= 1");
    }
    double total = checked_total(values);
    if (k >= values.size()) return 1.0;
    // Descending prefix sum: monotone in k by construction, even in floats.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double top = 0.0;
    for (std::size_t i = 0; i < k; ++i) top += sorted[i];
    return std::min(top / total, 1.0);
}

double gini(std::span<const double> values) {
    double total = checked_total(values);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    // sum_{i<j} |x_i - x_j| = sum_i (2i - n - 1) x_(i), ascending 1-based i.
    double dev = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        dev += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
    }
    return dev / (n * total);
}

LorenzCurve lorenz_curve(std::span<const double> values) {
    double total = checked_total(values);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    LorenzCurve curve;
    curve.points.reserve(n + 1);
    curve.points.emplace_back(0.0, 0.0);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cum += sorted[i];
        curve.points.emplace_back(static_cast<double>(i + 1) / static_cast<double>(n),
                                  cum / total);
    }
    curve.points.back().second = 1.0;
    return curve;
}

SeriesOutput concentration_series(const CapPanel& caps, const std::vector<std::size_t>& ks) {
    if (ks.empty()) {
        throw ContractError("ks must be nonempty");
    }
    for (std::size_t k : ks) {
        if (k == 0) throw ContractError("k must be >= 1");
    }
    SeriesOutput out;
    out.index = caps.dates();
    for (std::size_t k : ks) out.names.push_back("cr_" + std::to_string(k));
    out.values.reserve(caps.rows() * ks.size());
    for (std::size_t t = 0; t < caps.rows(); ++t) {
        auto row = caps.row_filled(t, 0.0); // missing caps count as zero
        for (std::size_t k : ks) {
            out.values.push_back(concentration_ratio(row, k));
        }
    }
    return out;
}

SeriesOutput gini_series(const CapPanel& caps, MissingPolicy policy) {
    SeriesOutput out;
    out.index = caps.dates();
    out.names = {policy == MissingPolicy::DropPerMonth ? "gini_drop_per_month"
                                                       : "gini_full_history"};
    out.values.reserve(caps.rows());
    if (policy == MissingPolicy::DropPerMonth) {
        for (std::size_t t = 0; t < caps.rows(); ++t) {
            auto row = caps.row_present(t);
            if (row.empty()) {
                throw UndefinedValueError("no caps present in month " + caps.dates()[t].iso());
            }
            out.values.push_back(gini(row));
        }
    } else {
        auto keep = caps.full_history_assets();
        if (keep.empty()) {
            throw UndefinedValueError("no asset has full cap history");
        }
        CapPanel sub = caps.select_assets(keep);
        for (std::size_t t = 0; t < sub.rows(); ++t) {
            out.values.push_back(gini(sub.row_present(t)));
        }
    }
    return out;
}

} // namespace capstruct

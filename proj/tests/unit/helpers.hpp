#ifndef CAPSTRUCT_TEST_HELPERS_HPP
#define CAPSTRUCT_TEST_HELPERS_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "capstruct/panel.hpp"
#include "capstruct/rng.hpp"

namespace capstruct::testing {

inline Date d(const std::string& iso) { return Date::parse(iso); }

inline std::vector<Date> dates(std::initializer_list<const char*> isos) {
    std::vector<Date> out;
    for (const char* s : isos) out.push_back(Date::parse(s));
    return out;
}

/// Panel from rows of optional values; nullopt = missing.
inline Panel make_panel(PanelKind kind,
                        std::vector<Date> idx,
                        std::vector<std::string> assets,
                        std::vector<std::vector<std::optional<double>>> rows) {
    std::vector<std::optional<double>> cells;
    for (const auto& row : rows) {
        for (const auto& v : row) cells.push_back(v);
    }
    return Panel(kind, std::move(idx), std::move(assets), std::move(cells));
}

/// Consecutive weekdays starting at `start`, as a date vector.
inline std::vector<Date> weekdays_from(Date start, std::size_t count) {
    std::vector<Date> out;
    Date cur = start;
    while (out.size() < count) {
        if (cur.is_weekday()) out.push_back(cur);
        cur = cur.next_day();
    }
    return out;
}

/// O(n^2) pairwise Gini, the direct form of the defining double sum.
/// Kept independent of the library's sorted identity.
inline double gini_pairwise(const std::vector<double>& x) {
    double total = 0.0;
    for (double v : x) total += v;
    double dev = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            dev += std::abs(x[i] - x[j]);
        }
    }
    return dev / (static_cast<double>(x.size()) * total);
}

/// Random feasible point of {sum w = 1, 0 <= w <= b}, built by mass
/// transfers from the uniform point; independent of the projection code.
inline Eigen::VectorXd random_feasible(std::size_t m, double b, Rng& rng) {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m),
                                                  1.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < 3 * m; ++k) {
        auto i = static_cast<Eigen::Index>(rng.below(m));
        auto j = static_cast<Eigen::Index>(rng.below(m));
        if (i == j) continue;
        double room = std::min(w[i], b - w[j]);
        double delta = room * rng.uniform();
        w[i] -= delta;
        w[j] += delta;
    }
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w[i] = std::min(std::max(w[i], 0.0), b);
    }
    return w;
}

} // namespace capstruct::testing

#endif

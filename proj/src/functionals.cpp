#include "capstruct/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "capstruct/errors.hpp"

namespace capstruct {

namespace {

// Weight row index for the trading date `day`, or SIZE_MAX when the
// trajectory does not cover it.
std::size_t weight_row_for_day(const WeightTrajectories& traj, const Date& day) {
    auto it = std::lower_bound(traj.dates.begin(), traj.dates.end(), day);
    if (it == traj.dates.end() || !(*it == day)) return SIZE_MAX;
    return static_cast<std::size_t>(it - traj.dates.begin());
}

std::vector<double> weight_row(const WeightTrajectories& traj, std::size_t row) {
    std::vector<double> w(static_cast<std::size_t>(traj.weights.cols()));
    for (Eigen::Index c = 0; c < traj.weights.cols(); ++c) {
        w[static_cast<std::size_t>(c)] = traj.weights(static_cast<Eigen::Index>(row), c);
    }
    return w;
}

std::vector<double> caps_row(const CapPanel& caps, std::size_t t) {
    std::vector<double> out(caps.cols());
    for (std::size_t c = 0; c < caps.cols(); ++c) {
        const auto& v = caps.at(t, c);
        if (!v) {
            throw ValidationError("functionals need gap-free caps; missing at " +
                                  caps.dates()[t].iso() + ", asset " + caps.assets()[c]);
        }
        out[c] = *v;
    }
    return out;
}

std::size_t require_weight_row(const CapPanel& caps,
                               const WeightTrajectories& traj,
                               const CalendarMap& cal,
                               std::size_t t) {
    std::size_t row = weight_row_for_day(traj, cal.day_date[t]);
    if (row == SIZE_MAX) {
        throw AlignmentError("no weight row at " + cal.day_date[t].iso() +
                             " for month " + caps.dates()[t].iso());
    }
    return row;
}

} // namespace

double exposure(std::span<const double> weights, std::span<const double> caps) {
    if (weights.size() != caps.size()) {
        throw ContractError("weights and caps differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        sum += weights[i] * caps[i];
    }
    return sum;
}

std::vector<double> trailing_mean_caps(const CapPanel& caps, std::size_t t, std::size_t tau) {
    if (tau < 1) {
        throw ContractError("tau must be >= 1");
    }
    if (t >= caps.rows()) {
        throw ContractError("month index out of range");
    }
    if (t + 1 < tau) {
        throw ConfigError("trailing window of " + std::to_string(tau) +
                          " months does not fit before month " + caps.dates()[t].iso());
    }
    std::vector<double> mean(caps.cols(), 0.0);
    for (std::size_t u = t + 1 - tau; u <= t; ++u) {
        auto row = caps_row(caps, u);
        for (std::size_t c = 0; c < caps.cols(); ++c) mean[c] += row[c];
    }
    for (double& v : mean) v /= static_cast<double>(tau);
    return mean;
}

double portfolio_gini(std::span<const double> values, std::span<const double> weights,
                      GiniMode mode) {
    if (values.size() != weights.size()) {
        throw ContractError("values and weights differ in length");
    }
    double nu_bar = exposure(weights, values);
    if (nu_bar <= 0.0) {
        throw UndefinedValueError("weighted mean of values is not positive");
    }
    // Full double sum over ordered pairs (i,j), both orderings counted.
    double dev = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (weights[i] == 0.0) continue;
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (weights[j] == 0.0) continue;
            dev += weights[i] * weights[j] * std::abs(values[i] - values[j]);
        }
    }
    return mode == GiniMode::Canonical ? dev / (2.0 * nu_bar) : 2.0 * dev / nu_bar;
}

std::vector<std::size_t> eligible_months(const CapPanel& caps,
                                         const WeightTrajectories& traj,
                                         const CalendarMap& cal,
                                         std::size_t tau) {
    if (tau < 1) {
        throw ContractError("tau must be >= 1");
    }
    if (cal.months() != caps.rows()) {
        throw ContractError("calendar map does not cover the cap panel");
    }
    if (traj.dates.empty()) {
        throw ContractError("empty weight trajectories");
    }
    std::vector<std::size_t> months;
    bool started = false;
    for (std::size_t t = tau - 1; t < caps.rows(); ++t) {
        bool covered = weight_row_for_day(traj, cal.day_date[t]) != SIZE_MAX;
        if (covered) {
            started = true;
            months.push_back(t);
        } else if (started) {
            // A hole after coverage began is a data misalignment, not a
            // too-short trajectory.
            throw AlignmentError("no weight row at " + cal.day_date[t].iso() +
                                 " for month " + caps.dates()[t].iso());
        }
    }
    return months;
}

FunctionalSeries functional_series(const CapPanel& caps,
                                   const WeightTrajectories& traj,
                                   const CalendarMap& cal,
                                   std::size_t tau,
                                   GiniMode mode) {
    FunctionalSeries out;
    auto months = eligible_months(caps, traj, cal, tau);
    const std::size_t m = caps.cols();
    if (static_cast<std::size_t>(traj.weights.cols()) != m) {
        throw ContractError("trajectory asset count does not match cap panel");
    }
    std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
    for (std::size_t t : months) {
        std::size_t row = require_weight_row(caps, traj, cal, t);
        auto w = weight_row(traj, row);
        auto current = caps_row(caps, t);
        auto trailing = trailing_mean_caps(caps, t, tau);
        out.months.push_back(caps.dates()[t]);
        out.nu.push_back(exposure(w, current));
        out.nu_bar.push_back(exposure(w, trailing));
        // mu via the same dot-product route so uniform weights reduce exactly.
        out.mu.push_back(exposure(uniform, current));
        out.mu_bar.push_back(exposure(uniform, trailing));
        out.f.push_back(out.nu_bar.back() / out.mu_bar.back());
        out.f_mu.push_back(out.nu_bar.back() / out.mu.back());
        out.g.push_back(portfolio_gini(trailing, w, mode));
    }
    return out;
}

DiscreteDistribution portfolio_distribution(const CapPanel& caps,
                                            const WeightTrajectories& traj,
                                            const CalendarMap& cal,
                                            std::size_t t,
                                            std::size_t tau) {
    if (cal.months() != caps.rows()) {
        throw ContractError("calendar map does not cover the cap panel");
    }
    std::size_t row = require_weight_row(caps, traj, cal, t);
    auto trailing = trailing_mean_caps(caps, t, tau);
    double total = 0.0;
    for (double v : trailing) total += v;
    if (total <= 0.0) {
        throw UndefinedValueError("trailing caps sum to zero at " + caps.dates()[t].iso());
    }
    for (double& v : trailing) v /= total;
    return DiscreteDistribution::make(std::move(trailing), weight_row(traj, row));
}

DistanceMatrix portfolio_distance_matrix(const CapPanel& caps,
                                         const WeightTrajectories& traj,
                                         const CalendarMap& cal,
                                         std::size_t tau,
                                         unsigned threads) {
    auto months = eligible_months(caps, traj, cal, tau);
    if (months.size() < 2) {
        throw ConfigError("portfolio distance matrix needs at least two eligible months");
    }
    std::vector<DiscreteDistribution> dists;
    std::vector<std::string> labels;
    dists.reserve(months.size());
    for (std::size_t t : months) {
        dists.push_back(portfolio_distribution(caps, traj, cal, t, tau));
        labels.push_back(caps.dates()[t].iso());
    }
    return distance_matrix(dists, std::move(labels), threads);
}

WeightTrajectories uniform_trajectories(const CapPanel& caps, const CalendarMap& cal) {
    if (cal.months() != caps.rows()) {
        throw ContractError("calendar map does not cover the cap panel");
    }
    WeightTrajectories traj;
    traj.assets = caps.assets();
    const std::size_t m = caps.cols();
    traj.dates = cal.day_date;
    traj.weights.resize(static_cast<Eigen::Index>(cal.months()),
                        static_cast<Eigen::Index>(m));
    traj.weights.setConstant(1.0 / static_cast<double>(m));
    return traj;
}

} // namespace capstruct

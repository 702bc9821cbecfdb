#ifndef CAPSTRUCT_FUNCTIONALS_HPP
#define CAPSTRUCT_FUNCTIONALS_HPP

#include <span>
#include <vector>

#include "capstruct/optimizer.hpp"
#include "capstruct/panel.hpp"
#include "capstruct/wasserstein.hpp"

namespace capstruct {

/// Weighted-Gini normalization. Canonical divides by 2*nu_bar and reduces to
/// the plain Gini under uniform weights; PaperLiteral multiplies by 2/nu_bar
/// (4x canonical).
enum class GiniMode { Canonical, PaperLiteral };

/// Monthly functional values of the rolling optimal portfolios.
/// nu/nu_bar/mu/mu_bar are in cap units; f and g are dimensionless.
struct FunctionalSeries {
    std::vector<Date> months;
    std::vector<double> nu;     // exposure to current caps
    std::vector<double> nu_bar; // exposure to trailing-mean caps
    std::vector<double> mu;     // uniform-portfolio exposure, current caps
    std::vector<double> mu_bar; // uniform-portfolio exposure, trailing means
    std::vector<double> f;      // nu_bar / mu_bar
    std::vector<double> f_mu;   // nu_bar / mu, the alternative normalization
    std::vector<double> g;      // portfolio Gini of trailing means

    std::size_t size() const { return months.size(); }
};

/// Portfolio market exposure: sum_i w_i * caps_i.
double exposure(std::span<const double> weights, std::span<const double> caps);

/// Per-asset mean cap over the tau months ending at month index t (0-based;
/// requires t >= tau-1). Throws ConfigError when the window does not fit.
std::vector<double> trailing_mean_caps(const CapPanel& caps, std::size_t t, std::size_t tau);

/// Weighted Gini of values under probability weights w.
double portfolio_gini(std::span<const double> values, std::span<const double> weights,
                      GiniMode mode = GiniMode::Canonical);

/// Distribution H_t: values X_bar_i(t)/M_bar(t), probabilities w_i(t).
DiscreteDistribution portfolio_distribution(const CapPanel& caps,
                                            const WeightTrajectories& traj,
                                            const CalendarMap& cal,
                                            std::size_t t,
                                            std::size_t tau);

/// Months eligible for functional evaluation: t >= tau-1 (0-based) whose
/// month-end trading day has a weight row. A gap strictly inside the covered
/// range raises AlignmentError naming the month.
std::vector<std::size_t> eligible_months(const CapPanel& caps,
                                         const WeightTrajectories& traj,
                                         const CalendarMap& cal,
                                         std::size_t tau);

/// All monthly functionals over the eligible months.
FunctionalSeries functional_series(const CapPanel& caps,
                                   const WeightTrajectories& traj,
                                   const CalendarMap& cal,
                                   std::size_t tau,
                                   GiniMode mode = GiniMode::Canonical);

/// Pairwise Wasserstein between the portfolio-weighted distributions H_t.
DistanceMatrix portfolio_distance_matrix(const CapPanel& caps,
                                         const WeightTrajectories& traj,
                                         const CalendarMap& cal,
                                         std::size_t tau,
                                         unsigned threads = 1);

/// Uniform-weight stand-in trajectory: one row of 1/m at every month-end
/// trading day. Used by the --uniform-weights override and in tests.
WeightTrajectories uniform_trajectories(const CapPanel& caps, const CalendarMap& cal);

} // namespace capstruct

#endif // CAPSTRUCT_FUNCTIONALS_HPP

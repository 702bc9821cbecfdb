#ifndef CAPSTRUCT_OPTIMIZER_HPP
#define CAPSTRUCT_OPTIMIZER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "capstruct/panel.hpp"

namespace capstruct {

/// Windowed moments plus constraint parameters for one Sharpe solve.
struct OptimizationInputs {
    Eigen::VectorXd mean_returns; // per-asset mean over the window (per day)
    Eigen::MatrixXd covariance;   // symmetric PSD
    double risk_free = 0.0;
    double cap_b = 0.15;          // feasible iff m * cap_b >= 1

    std::size_t assets() const { return static_cast<std::size_t>(mean_returns.size()); }
    void validate() const;
};

struct SolverOptions {
    std::uint64_t seed = 0;
    int starts = 16;             // uniform start + starts-1 projected random points
    int max_iterations = 2000;   // per start
    double tolerance = 1e-10;    // relative Sharpe improvement
    double ridge_scale = 1e-10;  // ridge eps = ridge_scale * trace(cov) / m
    bool record_trace = false;   // keep accepted Sharpe values of the winning start
};

struct SolveResult {
    Eigen::VectorXd weights;
    double sharpe = 0.0;
    bool converged = true; // winning start met the tolerance within budget
    int iterations = 0;    // accepted steps of the winning start
    std::vector<double> trace;
};

/// Daily optimal weight rows for s = window..S, one row per day.
struct WeightTrajectories {
    std::vector<Date> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd weights; // |dates| x |assets|
    std::vector<std::string> warnings;

    /// One asset's weight series (column copy).
    std::vector<double> trajectory(std::size_t asset) const;
};

/// (mean'w - rf) / sqrt(w' cov w). Throws UndefinedValueError when the
/// portfolio variance is not positive.
double sharpe(const Eigen::VectorXd& w, const OptimizationInputs& inputs);

/// Euclidean projection onto {w : sum w = 1, 0 <= w_i <= b}: bisection on the
/// dual variable with w_i = clamp(v_i - theta, 0, b), then an exact pivot on
/// the identified free set. Throws InfeasibleError when m * b < 1.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double b);

/// Projected-gradient ascent on the Sharpe ratio with backtracking line
/// search and deterministic multi-start. Ties between equal-value starts
/// resolve to the lowest start index.
SolveResult maximize_sharpe(const OptimizationInputs& inputs, const SolverOptions& options = {});

/// Rolling solve: windowed mean/covariance over [s-window+1, s] for each
/// s = window..S, then maximize_sharpe. Per-day multi-start seeds derive
/// from the day index, so results do not depend on thread scheduling.
WeightTrajectories rolling_weights(const ReturnsMatrix& returns,
                                   std::size_t window,
                                   double cap_b,
                                   double risk_free = 0.0,
                                   const SolverOptions& options = {},
                                   unsigned threads = 1);

} // namespace capstruct

#endif // CAPSTRUCT_OPTIMIZER_HPP

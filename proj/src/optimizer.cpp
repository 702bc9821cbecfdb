#include "capstruct/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "capstruct/errors.hpp"
#include "capstruct/parallel.hpp"
#include "capstruct/rng.hpp"

namespace capstruct {

namespace {

constexpr double kFeasibilityTol = 1e-12;

void check_feasible(std::size_t m, double b) {
    if (m == 0) {
        throw ContractError("no assets");
    }
    if (b <= 0.0 || static_cast<double>(m) * b < 1.0 - kFeasibilityTol) {
        throw InfeasibleError("cap b=" + std::to_string(b) + " infeasible for m=" +
                              std::to_string(m) + " assets (need m*b >= 1)");
    }
}

double clamp01b(double x, double b) {
    return std::min(std::max(x, 0.0), b);
}

// Ascent state for one start.
struct Ascent {
    Eigen::VectorXd w;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

double ratio_value(const Eigen::VectorXd& w,
                   const Eigen::VectorXd& mu,
                   const Eigen::MatrixXd& cov,
                   double rf,
                   Eigen::VectorXd& cov_w) {
    cov_w.noalias() = cov * w;
    double var = w.dot(cov_w);
    if (var <= 0.0) {
        throw UndefinedValueError("portfolio variance not positive");
    }
    return (mu.dot(w) - rf) / std::sqrt(var);
}

Ascent ascend(Eigen::VectorXd w0,
              const Eigen::VectorXd& mu,
              const Eigen::MatrixXd& cov,
              double rf,
              double b,
              const SolverOptions& opt) {
    Ascent a;
    a.w = std::move(w0);
    Eigen::VectorXd cov_w(a.w.size());
    a.value = ratio_value(a.w, mu, cov, rf, cov_w);
    if (opt.record_trace) a.trace.push_back(a.value);

    Eigen::VectorXd grad(a.w.size()), candidate(a.w.size()), cov_c(a.w.size());
    double step = 1.0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        double var = a.w.dot(cov_w);
        double sigma = std::sqrt(var);
        double excess = mu.dot(a.w) - rf;
        // d/dw of (mu'w - rf)/sigma.
        grad = mu / sigma - (excess / (var * sigma)) * cov_w;

        double gnorm = grad.norm();
        if (gnorm < 1e-300) {
            a.converged = true; // flat objective
            break;
        }

        bool accepted = false;
        double eta = step;
        double new_value = a.value;
        for (int ls = 0; ls < 64; ++ls) {
            candidate = project_capped_simplex(a.w + eta * grad, b);
            double v = ratio_value(candidate, mu, cov, rf, cov_c);
            if (v > a.value) {
                accepted = true;
                new_value = v;
                break;
            }
            eta *= 0.5;
            if (eta < 1e-280) break;
        }
        if (!accepted) {
            // No feasible ascent along the projected gradient: stationary.
            a.converged = true;
            break;
        }
        a.w.swap(candidate);
        cov_w.swap(cov_c);
        ++a.iterations;
        if (opt.record_trace) a.trace.push_back(new_value);
        double improvement = (new_value - a.value) / std::max(1.0, std::abs(a.value));
        a.value = new_value;
        step = eta * 2.0;
        if (improvement < opt.tolerance) {
            a.converged = true;
            break;
        }
    }
    return a;
}

} // namespace

void OptimizationInputs::validate() const {
    const auto m = mean_returns.size();
    if (covariance.rows() != m || covariance.cols() != m) {
        throw ContractError("covariance dimensions do not match mean returns");
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        if (covariance(i, i) < 0.0) {
            throw ContractError("negative variance on covariance diagonal");
        }
        for (Eigen::Index j = i + 1; j < m; ++j) {
            double scale = std::max({1.0, std::abs(covariance(i, j)), std::abs(covariance(j, i))});
            if (std::abs(covariance(i, j) - covariance(j, i)) > 1e-10 * scale) {
                throw ContractError("covariance not symmetric");
            }
        }
    }
    check_feasible(assets(), cap_b);
}

double sharpe(const Eigen::VectorXd& w, const OptimizationInputs& inputs) {
    if (w.size() != inputs.mean_returns.size()) {
        throw ContractError("weight vector length does not match inputs");
    }
    double var = w.dot(inputs.covariance * w);
    if (var <= 0.0) {
        throw UndefinedValueError("portfolio variance not positive");
    }
    return (inputs.mean_returns.dot(w) - inputs.risk_free) / std::sqrt(var);
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& v, double b) {
    const auto m = v.size();
    check_feasible(static_cast<std::size_t>(m), b);

    auto weight_sum = [&](double theta) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) s += clamp01b(v[i] - theta, b);
        return s;
    };

    // sum(theta) is nonincreasing; bracket the root of sum(theta) = 1.
    double lo = v.minCoeff() - b;
    double hi = v.maxCoeff();
    for (int it = 0; it < 128; ++it) {
        double mid = 0.5 * (lo + hi);
        if (weight_sum(mid) >= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double theta = 0.5 * (lo + hi);

    // Exact pivot: with the active sets fixed, theta solves the sum exactly.
    double free_sum = 0.0;
    Eigen::Index n_free = 0, n_capped = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        double x = v[i] - theta;
        if (x >= b) {
            ++n_capped;
        } else if (x > 0.0) {
            free_sum += v[i];
            ++n_free;
        }
    }
    if (n_free > 0) {
        double exact = (free_sum + b * static_cast<double>(n_capped) - 1.0) /
                       static_cast<double>(n_free);
        // Keep whichever theta lands the sum closer to 1.
        if (std::abs(weight_sum(exact) - 1.0) <= std::abs(weight_sum(theta) - 1.0)) {
            theta = exact;
        }
    }

    Eigen::VectorXd w(m);
    for (Eigen::Index i = 0; i < m; ++i) w[i] = clamp01b(v[i] - theta, b);
    return w;
}

SolveResult maximize_sharpe(const OptimizationInputs& inputs, const SolverOptions& options) {
    inputs.validate();
    const auto m = static_cast<Eigen::Index>(inputs.assets());

    // Ridge keeps the variance positive on degenerate windows.
    double trace = inputs.covariance.trace();
    double eps = options.ridge_scale * (trace > 0.0 ? trace / static_cast<double>(m) : 1.0);
    Eigen::MatrixXd cov = inputs.covariance;
    cov.diagonal().array() += eps;

    SolveResult best;
    bool have_best = false;
    const int starts = std::max(1, options.starts);
    for (int j = 0; j < starts; ++j) {
        Eigen::VectorXd w0(m);
        if (j == 0) {
            w0.setConstant(1.0 / static_cast<double>(m));
        } else {
            // Noise plus a rotating single-asset spike: the ratio can have
            // several vertex-local maxima (negative means with a binding
            // cap), so the starts must reach concentrated corners too.
            Rng rng(Rng::derive(options.seed, static_cast<std::uint64_t>(j)));
            for (Eigen::Index i = 0; i < m; ++i) w0[i] = rng.uniform();
            w0[static_cast<Eigen::Index>((j - 1) % static_cast<int>(m))] += 2.0;
            w0 = project_capped_simplex(w0, inputs.cap_b);
        }
        Ascent a = ascend(std::move(w0), inputs.mean_returns, cov, inputs.risk_free,
                          inputs.cap_b, options);
        double margin = 1e-12 * std::max(1.0, std::abs(best.sharpe));
        if (!have_best || a.value > best.sharpe + margin) {
            best.weights = std::move(a.w);
            best.sharpe = a.value;
            best.converged = a.converged;
            best.iterations = a.iterations;
            best.trace = std::move(a.trace);
            have_best = true;
        }
    }
    // Final exact clamp; projection already enforces this up to rounding.
    for (Eigen::Index i = 0; i < m; ++i) {
        best.weights[i] = clamp01b(best.weights[i], inputs.cap_b);
    }
    return best;
}

std::vector<double> WeightTrajectories::trajectory(std::size_t asset) const {
    std::vector<double> out(static_cast<std::size_t>(weights.rows()));
    for (Eigen::Index r = 0; r < weights.rows(); ++r) {
        out[static_cast<std::size_t>(r)] = weights(r, static_cast<Eigen::Index>(asset));
    }
    return out;
}

WeightTrajectories rolling_weights(const ReturnsMatrix& returns,
                                   std::size_t window,
                                   double cap_b,
                                   double risk_free,
                                   const SolverOptions& options,
                                   unsigned threads) {
    const std::size_t S = returns.rows();
    const std::size_t m = returns.cols();
    if (window < 2) {
        throw ConfigError("rolling window must be at least 2");
    }
    if (S < window) {
        throw ConfigError("rolling window of " + std::to_string(window) +
                          " days exceeds the " + std::to_string(S) + " available returns");
    }
    check_feasible(m, cap_b);
    if (returns.missing_count() != 0) {
        throw ValidationError("rolling optimization requires gap-free returns; run "
                              "restrict_full_history first");
    }

    Eigen::MatrixXd R = returns.dense();
    const std::size_t rows = S - window + 1;

    WeightTrajectories traj;
    traj.dates.assign(returns.dates.begin() + static_cast<std::ptrdiff_t>(window - 1),
                      returns.dates.end());
    traj.assets = returns.assets;
    traj.weights.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(m));
    std::vector<std::string> slot_warnings(rows);

    parallel_for(rows, threads, [&](std::size_t r) {
        const std::size_t s = r + window - 1; // window covers [s-window+1, s]
        auto block = R.middleRows(static_cast<Eigen::Index>(s - window + 1),
                                  static_cast<Eigen::Index>(window));
        OptimizationInputs in;
        in.mean_returns = block.colwise().mean();
        Eigen::MatrixXd centered = block.rowwise() - in.mean_returns.transpose();
        in.covariance.noalias() = centered.transpose() * centered;
        in.covariance /= static_cast<double>(window - 1);
        in.risk_free = risk_free;
        in.cap_b = cap_b;

        SolverOptions local = options;
        local.seed = Rng::derive(options.seed, 0x726f6c6cULL, s);
        local.record_trace = false;
        SolveResult res = maximize_sharpe(in, local);
        traj.weights.row(static_cast<Eigen::Index>(r)) = res.weights.transpose();
        if (!res.converged) {
            slot_warnings[r] = "solver hit iteration budget at " + traj.dates[r].iso();
        }
    });
    for (auto& w : slot_warnings) {
        if (!w.empty()) traj.warnings.push_back(std::move(w));
    }
    return traj;
}

} // namespace capstruct

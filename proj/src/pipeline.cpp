#include "capstruct/pipeline.hpp"

#include <filesystem>

#include "json.hpp"

#include "capstruct/csvio.hpp"
#include "capstruct/errors.hpp"
#include "capstruct/optimizer.hpp"
#include "capstruct/svg.hpp"

namespace capstruct {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct LoadedPanels {
    PricePanel prices;
    CapPanel caps;
};

LoadedPanels load_inputs(const RunConfig& config) {
    if (config.prices_path.empty() || config.caps_path.empty()) {
        throw ConfigError("both --prices and --caps input files are required");
    }
    return {load_panel(config.prices_path, PanelKind::Price),
            load_panel(config.caps_path, PanelKind::Cap)};
}

fs::path out_path(const RunConfig& config, const char* name) {
    fs::create_directories(config.out_dir);
    return fs::path(config.out_dir) / name;
}

void write_out(const RunConfig& config, const char* name, const std::string& content) {
    write_text_file(out_path(config, name).string(), content);
}

std::string return_mode_name(ReturnMode mode) {
    return mode == ReturnMode::Simple ? "simple" : "log";
}

std::string gini_mode_name(GiniMode mode) {
    return mode == GiniMode::Canonical ? "canonical" : "paper_literal";
}

std::string missing_policy_name(MissingPolicy policy) {
    return policy == MissingPolicy::DropPerMonth ? "drop_per_month" : "full_history_only";
}

// Structure metrics over the raw cap panel (missing handled per policy).
void emit_structure(const RunConfig& config, const CapPanel& caps, Report& report) {
    report.n = caps.cols();
    report.T = caps.rows();

    auto cr = concentration_series(caps, config.ks);
    write_out(config, "concentration.csv", series_to_csv(cr));
    write_out(config, "concentration.svg", svg::line_chart(cr, "Top-k concentration ratios"));

    auto gini_drop = gini_series(caps, MissingPolicy::DropPerMonth);
    auto gini_full = gini_series(caps, MissingPolicy::FullHistoryOnly);
    SeriesOutput gini_both;
    gini_both.index = gini_drop.index;
    // Chosen policy first, the comparison series second.
    if (config.missing_policy == MissingPolicy::DropPerMonth) {
        gini_both.names = {gini_drop.names[0], gini_full.names[0]};
    } else {
        gini_both.names = {gini_full.names[0], gini_drop.names[0]};
    }
    gini_both.values.reserve(2 * gini_drop.rows());
    for (std::size_t t = 0; t < gini_drop.rows(); ++t) {
        if (config.missing_policy == MissingPolicy::DropPerMonth) {
            gini_both.values.push_back(gini_drop.at(t, 0));
            gini_both.values.push_back(gini_full.at(t, 0));
        } else {
            gini_both.values.push_back(gini_full.at(t, 0));
            gini_both.values.push_back(gini_drop.at(t, 0));
        }
    }
    write_out(config, "gini.csv", series_to_csv(gini_both));
    write_out(config, "gini.svg", svg::line_chart(gini_both, "Market cap Gini coefficient"));

    std::vector<DiscreteDistribution> dists;
    std::vector<std::string> labels;
    dists.reserve(caps.rows());
    for (std::size_t t = 0; t < caps.rows(); ++t) {
        dists.push_back(normalized_cap_distribution(caps, t));
        labels.push_back(caps.dates()[t].iso());
    }
    auto matrix = distance_matrix(dists, labels, config.threads);
    write_out(config, "wasserstein_matrix.csv", matrix_to_csv(matrix));

    auto dend = agglomerate(matrix, config.linkage);
    write_out(config, "dendrogram.json", dendrogram_to_json(dend));
    write_out(config, "dendrogram.svg",
              svg::dendrogram(dend, "Monthly cap distributions, Wasserstein clustering"));
    write_out(config, "wasserstein_matrix.svg",
              svg::heatmap(matrix, leaf_order(dend),
                           "Wasserstein distances, dendrogram order"));
}

WeightTrajectories solve_rolling(const RunConfig& config,
                                 const PricePanel& rp,
                                 const CapPanel& rc,
                                 Report& report) {
    auto returns = compute_returns(rp, config.return_mode);
    report.m = rp.cols();
    report.S = returns.rows();
    if (static_cast<double>(rp.cols()) * config.cap_b < 1.0 - 1e-12) {
        throw InfeasibleError("cap b=" + format_double(config.cap_b) + " infeasible for m=" +
                              std::to_string(rp.cols()) + " restricted assets");
    }
    (void)rc;
    SolverOptions options;
    options.seed = config.seed;
    auto traj = rolling_weights(returns, config.rho, config.cap_b, config.risk_free,
                                options, config.threads);
    for (const auto& w : traj.warnings) report.warnings.push_back(w);
    return traj;
}

void emit_optimize(const RunConfig& config, const WeightTrajectories& traj) {
    write_out(config, "weights.csv", weights_to_csv(traj));

    std::vector<std::string> row_labels;
    row_labels.reserve(traj.dates.size());
    for (const auto& d : traj.dates) row_labels.push_back(d.iso());
    // Eigen default storage is column-major; rearrange row-major for the grid.
    std::vector<double> grid(static_cast<std::size_t>(traj.weights.size()));
    const std::size_t rows = traj.dates.size(), cols = traj.assets.size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            grid[r * cols + c] = traj.weights(static_cast<Eigen::Index>(r),
                                              static_cast<Eigen::Index>(c));
        }
    }
    write_out(config, "weights.svg",
              svg::grid_heatmap(row_labels, traj.assets, grid, "Optimal weights over time"));

    // Cluster assets by the L1 distance between their weight trajectories.
    DistanceMatrix wdist;
    wdist.labels = traj.assets;
    wdist.entries.assign(cols * cols, 0.0);
    for (std::size_t i = 0; i < cols; ++i) {
        auto wi = traj.trajectory(i);
        for (std::size_t j = i + 1; j < cols; ++j) {
            auto wj = traj.trajectory(j);
            double d = l1_trajectory_distance(wi, wj);
            wdist.entries[i * cols + j] = d;
            wdist.entries[j * cols + i] = d;
        }
    }
    auto dend = agglomerate(wdist, config.linkage);
    write_out(config, "weight_dendrogram.json", dendrogram_to_json(dend));
    write_out(config, "weight_dendrogram.svg",
              svg::dendrogram(dend, "Weight trajectories, L1 clustering"));
}

void emit_functionals(const RunConfig& config,
                      const CapPanel& raw_caps,
                      const PricePanel& rp,
                      const CapPanel& rc,
                      const WeightTrajectories& traj,
                      Report& report) {
    auto cal = build_calendar_map(rp, rc);
    auto series = functional_series(rc, traj, cal, config.tau, config.gini_mode);
    write_out(config, "functionals.csv", functionals_to_csv(series));

    SeriesOutput exposure_series;
    exposure_series.index = series.months;
    exposure_series.names = {"nu_bar", "mu_bar"};
    for (std::size_t i = 0; i < series.size(); ++i) {
        exposure_series.values.push_back(series.nu_bar[i]);
        exposure_series.values.push_back(series.mu_bar[i]);
    }
    write_out(config, "exposure.svg",
              svg::line_chart(exposure_series, "Portfolio cap exposure vs uniform"));

    SeriesOutput f_series;
    f_series.index = series.months;
    f_series.names = {"f", "f_mu"};
    for (std::size_t i = 0; i < series.size(); ++i) {
        f_series.values.push_back(series.f[i]);
        f_series.values.push_back(series.f_mu[i]);
    }
    write_out(config, "normalized_exposure.svg",
              svg::line_chart(f_series, "Normalized market exposure"));

    // Portfolio Gini against the market Gini over the same months.
    auto market_gini = gini_series(raw_caps, config.missing_policy);
    SeriesOutput gini_cmp;
    gini_cmp.index = series.months;
    gini_cmp.names = {"portfolio_g", "market_G"};
    for (std::size_t i = 0; i < series.size(); ++i) {
        gini_cmp.values.push_back(series.g[i]);
        std::size_t t = 0;
        while (t < market_gini.rows() && !(market_gini.index[t] == series.months[i])) ++t;
        gini_cmp.values.push_back(t < market_gini.rows() ? market_gini.at(t, 0) : 0.0);
    }
    write_out(config, "portfolio_gini.svg",
              svg::line_chart(gini_cmp, "Portfolio Gini vs market Gini"));

    auto matrix = portfolio_distance_matrix(rc, traj, cal, config.tau, config.threads);
    write_out(config, "portfolio_matrix.csv", matrix_to_csv(matrix));
    auto dend = agglomerate(matrix, config.linkage);
    write_out(config, "portfolio_dendrogram.json", dendrogram_to_json(dend));
    write_out(config, "portfolio_dendrogram.svg",
              svg::dendrogram(dend, "Portfolio-weighted distributions, Wasserstein clustering"));
    write_out(config, "portfolio_matrix.svg",
              svg::heatmap(matrix, leaf_order(dend),
                           "Portfolio Wasserstein distances, dendrogram order"));
    if (report.T == 0) report.T = rc.rows();
}

void write_report(const RunConfig& config, const Report& report) {
    write_out(config, "report.json", report_to_json(config, report));
}

} // namespace

std::string dendrogram_to_json(const Dendrogram& dend) {
    ordered_json j;
    j["leaf_labels"] = dend.leaf_labels;
    ordered_json merges = ordered_json::array();
    for (const auto& m : dend.merges) {
        merges.push_back({m.left, m.right, m.height, m.size});
    }
    j["merges"] = merges;
    return j.dump(2) + "\n";
}

Dendrogram dendrogram_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Dendrogram dend;
    dend.leaf_labels = j.at("leaf_labels").get<std::vector<std::string>>();
    for (const auto& m : j.at("merges")) {
        dend.merges.push_back({m.at(0).get<std::size_t>(), m.at(1).get<std::size_t>(),
                               m.at(2).get<double>(), m.at(3).get<std::size_t>()});
    }
    return dend;
}

std::string report_to_json(const RunConfig& config, const Report& report) {
    ordered_json j;
    ordered_json cfg;
    cfg["prices"] = config.prices_path;
    cfg["caps"] = config.caps_path;
    cfg["out"] = config.out_dir;
    cfg["rho"] = config.rho;
    cfg["tau"] = config.tau;
    cfg["cap_b"] = config.cap_b;
    cfg["risk_free"] = config.risk_free;
    cfg["return_mode"] = return_mode_name(config.return_mode);
    cfg["linkage"] = linkage_name(config.linkage);
    cfg["gini_mode"] = gini_mode_name(config.gini_mode);
    cfg["missing_policy"] = missing_policy_name(config.missing_policy);
    cfg["ks"] = config.ks;
    cfg["seed"] = config.seed;
    cfg["threads"] = config.threads;
    cfg["uniform_weights"] = config.uniform_weights;
    j["config"] = cfg;
    ordered_json derived;
    derived["n"] = report.n;
    derived["m"] = report.m;
    derived["T"] = report.T;
    derived["S"] = report.S;
    j["derived"] = derived;
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

Report run_structure(const RunConfig& config) {
    Report report;
    if (config.caps_path.empty()) {
        throw ConfigError("--caps is required");
    }
    auto caps = load_panel(config.caps_path, PanelKind::Cap);
    emit_structure(config, caps, report);
    write_report(config, report);
    return report;
}

Report run_optimize(const RunConfig& config) {
    Report report;
    auto panels = load_inputs(config);
    report.n = panels.caps.cols();
    report.T = panels.caps.rows();
    auto [rp, rc] = restrict_full_history(panels.prices, panels.caps);
    auto traj = solve_rolling(config, rp, rc, report);
    emit_optimize(config, traj);
    write_report(config, report);
    return report;
}

Report run_functionals(const RunConfig& config) {
    Report report;
    auto panels = load_inputs(config);
    report.n = panels.caps.cols();
    report.T = panels.caps.rows();
    auto [rp, rc] = restrict_full_history(panels.prices, panels.caps);
    report.m = rp.cols();

    WeightTrajectories traj;
    if (config.uniform_weights) {
        auto cal = build_calendar_map(rp, rc);
        traj = uniform_trajectories(rc, cal);
        report.S = compute_returns(rp, config.return_mode).rows();
    } else {
        fs::path weights_file = fs::path(config.out_dir) / "weights.csv";
        if (fs::exists(weights_file)) {
            traj = weights_from_csv(read_text_file(weights_file.string()),
                                    weights_file.string());
            if (traj.assets != rp.assets()) {
                throw ConfigError("existing weights.csv assets do not match the restricted "
                                  "panel; rerun optimize");
            }
            report.S = compute_returns(rp, config.return_mode).rows();
        } else {
            traj = solve_rolling(config, rp, rc, report);
        }
    }
    emit_functionals(config, panels.caps, rp, rc, traj, report);
    write_report(config, report);
    return report;
}

Report run_synth(const RunConfig& config) {
    Report report;
    auto [prices, caps] = generate_synthetic(config.synth);
    write_out(config, "prices.csv", panel_to_csv(prices));
    write_out(config, "caps.csv", panel_to_csv(caps));
    report.n = caps.cols();
    report.T = caps.rows();
    report.S = prices.rows() - 1;
    write_report(config, report);
    return report;
}

Report run_all(const RunConfig& config) {
    Report report;
    auto panels = load_inputs(config);
    emit_structure(config, panels.caps, report);

    auto [rp, rc] = restrict_full_history(panels.prices, panels.caps);
    WeightTrajectories traj;
    if (config.uniform_weights) {
        auto cal = build_calendar_map(rp, rc);
        traj = uniform_trajectories(rc, cal);
        report.m = rp.cols();
        report.S = compute_returns(rp, config.return_mode).rows();
    } else {
        traj = solve_rolling(config, rp, rc, report);
    }
    emit_optimize(config, traj);
    emit_functionals(config, panels.caps, rp, rc, traj, report);
    write_report(config, report);
    return report;
}

} // namespace capstruct

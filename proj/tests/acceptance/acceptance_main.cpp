// Acceptance suite: one criterion per function, each printing a PASS/FAIL
// line with the measured figure. Exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "capstruct/cluster.hpp"
#include "capstruct/csvio.hpp"
#include "capstruct/functionals.hpp"
#include "capstruct/optimizer.hpp"
#include "capstruct/pipeline.hpp"
#include "capstruct/rng.hpp"
#include "capstruct/structure.hpp"
#include "capstruct/synth.hpp"
#include "capstruct/wasserstein.hpp"

#ifndef CAPSTRUCT_CLI_PATH
#define CAPSTRUCT_CLI_PATH "capstruct"
#endif

namespace fs = std::filesystem;
using namespace capstruct;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("capstruct_acceptance_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(CAPSTRUCT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

std::vector<double> random_nonnegative(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform() < 0.15 ? 0.0 : rng.uniform(0.0, 1000.0);
    v[rng.below(n)] = rng.uniform(1.0, 1000.0);
    return v;
}

DiscreteDistribution random_weighted(Rng& rng) {
    std::size_t n = 1 + rng.below(15);
    std::vector<double> values(n), weights(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = rng.uniform(-10.0, 10.0);
        weights[i] = rng.uniform(0.02, 1.0);
        total += weights[i];
    }
    for (auto& w : weights) w /= total;
    double s = 0.0;
    for (double w : weights) s += w;
    weights[0] += 1.0 - s;
    return DiscreteDistribution::make(std::move(values), std::move(weights));
}

// 1. Gini-Lorenz consistency: |G - (1 - 2A)| <= 1e-9 over 1000 vectors, < 5 s.
Outcome criterion_gini_lorenz() {
    auto start = Clock::now();
    Rng rng(1001);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 2 + rng.below(199); // n in [2, 200]
        auto v = random_nonnegative(rng, n);
        double g = gini(v);
        double a = lorenz_curve(v).area();
        worst = std::max(worst, std::abs(g - (1.0 - 2.0 * a)));
    }
    double elapsed = seconds_since(start);
    bool pass = worst <= 1e-9 && elapsed < 5.0;
    return {pass, "max |G-(1-2A)| = " + fmt(worst) + " over 1000 vectors, " +
                      fmt(elapsed) + " s"};
}

// 2. CR monotonicity, CR_n = 1, scale invariance to 1e-12, < 2 s.
Outcome criterion_concentration() {
    auto start = Clock::now();
    Rng rng(1002);
    double worst_scale = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 2 + rng.below(120);
        auto v = random_nonnegative(rng, n);
        double prev = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            double cr = concentration_ratio(v, k);
            if (cr < prev) {
                return {false, "monotonicity violated at trial " + std::to_string(trial)};
            }
            prev = cr;
        }
        if (concentration_ratio(v, n) != 1.0) {
            return {false, "CR_n != 1 at trial " + std::to_string(trial)};
        }
        double lambda = rng.uniform(1e-3, 1e3);
        std::vector<double> scaled = v;
        for (auto& x : scaled) x *= lambda;
        std::size_t k = 1 + rng.below(n);
        worst_scale = std::max(worst_scale, std::abs(concentration_ratio(scaled, k) -
                                                     concentration_ratio(v, k)));
    }
    double elapsed = seconds_since(start);
    bool pass = worst_scale <= 1e-12 && elapsed < 2.0;
    return {pass, "1000 vectors monotone, CR_n = 1, scale drift " + fmt(worst_scale) +
                      ", " + fmt(elapsed) + " s"};
}

// 3. Wasserstein oracle equivalence 1e-12, symmetry 1e-12, triangle 1e-9, < 10 s.
Outcome criterion_wasserstein() {
    auto start = Clock::now();
    Rng rng(1003);
    double worst_oracle = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + rng.below(40);
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(-10.0, 10.0);
            b[i] = rng.uniform(-10.0, 10.0);
        }
        double general = wasserstein(DiscreteDistribution::uniform(a),
                                     DiscreteDistribution::uniform(b));
        worst_oracle = std::max(worst_oracle, std::abs(general - wasserstein_equal_n(a, b)));
    }
    double worst_sym = 0.0, worst_tri = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_weighted(rng);
        auto g = random_weighted(rng);
        auto h = random_weighted(rng);
        double fg = wasserstein(f, g);
        worst_sym = std::max(worst_sym, std::abs(fg - wasserstein(g, f)));
        worst_tri = std::max(worst_tri, fg - (wasserstein(f, h) + wasserstein(h, g)));
    }
    double elapsed = seconds_since(start);
    bool pass = worst_oracle <= 1e-12 && worst_sym <= 1e-12 && worst_tri <= 1e-9 &&
                elapsed < 10.0;
    return {pass, "oracle gap " + fmt(worst_oracle) + ", asymmetry " + fmt(worst_sym) +
                      ", triangle slack " + fmt(worst_tri) + ", " + fmt(elapsed) + " s"};
}

// 4. Optimizer vs m=3 grid search at resolution 0.005, gap <= 1e-3, < 60 s.
Outcome criterion_optimizer() {
    auto start = Clock::now();
    Rng rng(1004);
    const double caps[] = {0.5, 0.6, 1.0};
    double worst_gap = -1e300;
    for (int trial = 0; trial < 50; ++trial) {
        OptimizationInputs in;
        in.mean_returns.resize(3);
        for (Eigen::Index i = 0; i < 3; ++i) in.mean_returns[i] = rng.uniform(-0.2, 0.2);
        Eigen::Matrix3d a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
        Eigen::Matrix3d cov = a * a.transpose() * 0.01;
        cov.diagonal().array() += rng.uniform(1e-4, 1e-2);
        in.covariance = cov;
        in.risk_free = 0.0;
        in.cap_b = caps[trial % 3];

        SolverOptions opt;
        opt.seed = 5000 + static_cast<std::uint64_t>(trial);
        auto res = maximize_sharpe(in, opt);

        const double h = 0.005;
        double best = -1e300;
        for (int i = 0; static_cast<double>(i) * h <= in.cap_b + 1e-12; ++i) {
            double w1 = static_cast<double>(i) * h;
            for (int j = 0; static_cast<double>(j) * h <= in.cap_b + 1e-12; ++j) {
                double w2 = static_cast<double>(j) * h;
                double w3 = 1.0 - w1 - w2;
                if (w3 < -1e-12 || w3 > in.cap_b + 1e-12) continue;
                Eigen::Vector3d w(w1, w2, std::min(std::max(w3, 0.0), in.cap_b));
                best = std::max(best, sharpe(w, in));
            }
        }
        worst_gap = std::max(worst_gap, best - res.sharpe);
    }
    double elapsed = seconds_since(start);
    bool pass = worst_gap <= 1e-3 && elapsed < 60.0;
    return {pass, "worst grid gap " + fmt(worst_gap) + " over 50 instances, " +
                      fmt(elapsed) + " s"};
}

// 5. Projection optimality on 200 trials x 1000 probes; hand case to 1e-10.
Outcome criterion_projection() {
    auto start = Clock::now();
    Eigen::Vector3d hand(10.0, 0.0, 0.0);
    Eigen::VectorXd hp = project_capped_simplex(hand, 0.5);
    if (std::abs(hp[0] - 0.5) > 1e-10 || std::abs(hp[1] - 0.25) > 1e-10 ||
        std::abs(hp[2] - 0.25) > 1e-10) {
        return {false, "hand case (10,0,0), b=0.5 missed (0.5,0.25,0.25)"};
    }
    Rng rng(1005);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = 2 + rng.below(29);
        double b = rng.uniform(1.0 / static_cast<double>(m), 1.0);
        if (static_cast<double>(m) * b < 1.0) b = 1.0 / static_cast<double>(m);
        Eigen::VectorXd v(static_cast<Eigen::Index>(m));
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-3.0, 3.0);
        if (rng.uniform() < 0.2) v[static_cast<Eigen::Index>(rng.below(m))] *= 50.0;
        Eigen::VectorXd p = project_capped_simplex(v, b);
        double dp = (p - v).norm();
        for (int probe = 0; probe < 1000; ++probe) {
            // Random feasible point by mass transfer from uniform.
            Eigen::VectorXd w = Eigen::VectorXd::Constant(
                static_cast<Eigen::Index>(m), 1.0 / static_cast<double>(m));
            for (std::size_t k = 0; k < 2 * m; ++k) {
                auto i = static_cast<Eigen::Index>(rng.below(m));
                auto j = static_cast<Eigen::Index>(rng.below(m));
                if (i == j) continue;
                double delta = std::min(w[i], b - w[j]) * rng.uniform();
                w[i] -= delta;
                w[j] += delta;
            }
            if (dp > (w - v).norm() + 1e-12) {
                return {false, "random feasible point beat the projection at trial " +
                                   std::to_string(trial)};
            }
        }
    }
    double elapsed = seconds_since(start);
    return {true, "hand case exact to 1e-10; 200 trials x 1000 probes unbeaten, " +
                      fmt(elapsed) + " s"};
}

// 6. Uniform-weight reductions on a 20-asset, 36-month synthetic panel.
Outcome criterion_uniform_reduction() {
    auto start = Clock::now();
    SynthConfig synth;
    synth.assets = 20;
    synth.months = 36;
    synth.days = 800;
    synth.seed = 1006;
    auto [prices, caps] = generate_synthetic(synth);
    if (caps.rows() != 36) {
        return {false, "synthetic panel has " + std::to_string(caps.rows()) + " months"};
    }
    auto cal = build_calendar_map(prices, caps);
    auto traj = uniform_trajectories(caps, cal);
    const std::size_t tau = 6;
    auto series = functional_series(caps, traj, cal, tau);

    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.f[i] != 1.0) {
            return {false, "f(t) != 1 exactly at " + series.months[i].iso()};
        }
        std::size_t t = tau - 1 + i;
        double plain = gini(trailing_mean_caps(caps, t, tau));
        if (std::abs(series.g[i] - plain) > 1e-12) {
            return {false, "g(t) differs from plain gini at " + series.months[i].iso()};
        }
    }

    auto portfolio = portfolio_distance_matrix(caps, traj, cal, tau);
    std::vector<DiscreteDistribution> dists;
    std::vector<std::string> labels;
    for (std::size_t t = tau - 1; t < caps.rows(); ++t) {
        auto trailing = trailing_mean_caps(caps, t, tau);
        double total = 0.0;
        for (double v : trailing) total += v;
        for (auto& v : trailing) v /= total;
        dists.push_back(DiscreteDistribution::uniform(trailing));
        labels.push_back(caps.dates()[t].iso());
    }
    auto uniform_matrix = distance_matrix(dists, labels);
    if (portfolio.size() != uniform_matrix.size()) {
        return {false, "matrix sizes differ"};
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < portfolio.entries.size(); ++i) {
        worst = std::max(worst, std::abs(portfolio.entries[i] - uniform_matrix.entries[i]));
    }
    double elapsed = seconds_since(start);
    bool pass = worst <= 1e-12;
    return {pass, "f identically 1, g matches gini, matrix gap " + fmt(worst) + ", " +
                      fmt(elapsed) + " s (" + std::to_string(series.size()) + " months)"};
}

// 7. End-to-end regime detection through the CLI pipeline, < 30 s.
Outcome criterion_regime_detection() {
    auto start = Clock::now();
    auto dir = fresh_dir("regime");
    // Break magnitude >= 5x intra-regime noise by construction: 0.5 vs 0.02.
    if (run_cli("synth --out " + dir.string() +
                " --assets 20 --months 48 --days 600 --seed 1007 --break-month 25"
                " --break-magnitude 0.5 --noise 0.02") != 0) {
        return {false, "synth subcommand failed"};
    }
    if (run_cli("structure --caps " + (dir / "caps.csv").string() + " --out " +
                dir.string() + " --threads 2") != 0) {
        return {false, "structure subcommand failed"};
    }
    auto dend = dendrogram_from_json(read_text_file((dir / "dendrogram.json").string()));
    if (dend.leaf_count() != 48) {
        return {false, "expected 48 months, got " + std::to_string(dend.leaf_count())};
    }
    auto labels = cut(dend, 2);
    std::size_t misassigned = 0;
    for (std::size_t t = 0; t < 48; ++t) {
        std::size_t expected = t < 24 ? labels[0] : labels[47];
        if (labels[t] != expected) ++misassigned;
    }
    if (labels[0] == labels[47]) {
        return {false, "2-cut did not separate the regimes"};
    }

    // Confirm the planted separation really is >= 5x the intra-regime spread.
    auto matrix = matrix_from_csv(read_text_file((dir / "wasserstein_matrix.csv").string()));
    double intra = 0.0, inter = 1e300;
    for (std::size_t i = 0; i < 48; ++i) {
        for (std::size_t j = i + 1; j < 48; ++j) {
            bool same = (i < 24) == (j < 24);
            if (same) {
                intra = std::max(intra, matrix.at(i, j));
            } else {
                inter = std::min(inter, matrix.at(i, j));
            }
        }
    }
    double elapsed = seconds_since(start);
    bool pass = misassigned == 0 && inter >= 5.0 * intra && elapsed < 30.0;
    return {pass, std::to_string(misassigned) + " misassigned months, separation ratio " +
                      fmt(inter / intra) + ", " + fmt(elapsed) + " s"};
}

// 8. Byte-identical outputs across reruns and thread counts 1 and 8.
Outcome criterion_determinism() {
    auto start = Clock::now();
    auto data = fresh_dir("det_data");
    if (run_cli("synth --out " + data.string() +
                " --assets 15 --months 20 --days 460 --seed 1008") != 0) {
        return {false, "synth subcommand failed"};
    }
    // Each run happens inside its own sandbox with the same relative paths,
    // so report.json's config echo is comparable byte-for-byte.
    auto run_all_into = [&](const std::string& tag, int threads) {
        auto parent = fresh_dir(tag);
        fs::copy_file(data / "prices.csv", parent / "prices.csv");
        fs::copy_file(data / "caps.csv", parent / "caps.csv");
        std::string cmd = "cd " + parent.string() + " && " + CAPSTRUCT_CLI_PATH +
                          " all --prices prices.csv --caps caps.csv --out run"
                          " --seed 1008 --threads " +
                          std::to_string(threads) + " > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return std::make_pair(parent / "run", rc);
    };
    auto [d1, rc1] = run_all_into("det_t1", 1);
    auto [d2, rc2] = run_all_into("det_t1b", 1);
    auto [d8, rc8] = run_all_into("det_t8", 8);
    if (rc1 != 0 || rc2 != 0 || rc8 != 0) {
        return {false, "all subcommand failed"};
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(d1)) {
        const std::string name = entry.path().filename().string();
        const bool is_data = name.ends_with(".csv") || name.ends_with(".json") ||
                             name.ends_with(".svg");
        if (!is_data) continue;
        auto a = read_text_file(entry.path().string());
        auto b = read_text_file((d2 / name).string());
        if (a != b) {
            return {false, name + " differs between identical reruns"};
        }
        if (name == "report.json") {
            // The config echo records the thread count; the data fields must match.
            auto r1 = nlohmann::json::parse(a);
            auto r8 = nlohmann::json::parse(read_text_file((d8 / name).string()));
            if (r1["derived"] != r8["derived"] || r1["warnings"] != r8["warnings"]) {
                return {false, "report derived/warnings differ across thread counts"};
            }
        } else {
            auto c = read_text_file((d8 / name).string());
            if (a != c) {
                return {false, name + " differs between 1 and 8 threads"};
            }
        }
        ++compared;
    }
    double elapsed = seconds_since(start);
    bool pass = compared >= 20;
    return {pass, std::to_string(compared) + " files byte-identical across reruns and "
                      "thread counts, " + fmt(elapsed) + " s"};
}

// 9. Full pipeline at production scale in under 10 minutes.
Outcome criterion_throughput() {
    auto start = Clock::now();
    auto dir = fresh_dir("throughput");
    if (run_cli("synth --out " + dir.string() +
                " --assets 82 --months 246 --days 5158 --seed 1009") != 0) {
        return {false, "synth subcommand failed"};
    }
    if (run_cli("all --prices " + (dir / "prices.csv").string() + " --caps " +
                (dir / "caps.csv").string() + " --out " + dir.string() +
                " --seed 1009 --threads 0") != 0) {
        return {false, "all subcommand failed"};
    }
    auto report = nlohmann::json::parse(read_text_file((dir / "report.json").string()));
    std::size_t S = report["derived"]["S"];
    std::size_t T = report["derived"]["T"];
    std::size_t m = report["derived"]["m"];
    double elapsed = seconds_since(start);
    bool pass = elapsed < 600.0 && S == 5157 && m == 82;
    return {pass, "m=" + std::to_string(m) + ", T=" + std::to_string(T) + ", S=" +
                      std::to_string(S) + ", " + std::to_string(S - 180 + 1) +
                      " rolling solves, " + fmt(elapsed) + " s"};
}

struct Criterion {
    int number;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "gini-lorenz consistency", criterion_gini_lorenz},
    {2, "concentration monotonicity and bounds", criterion_concentration},
    {3, "wasserstein oracle and metric axioms", criterion_wasserstein},
    {4, "optimizer grid-search oracle", criterion_optimizer},
    {5, "projection KKT optimality", criterion_projection},
    {6, "uniform-weight reductions", criterion_uniform_reduction},
    {7, "regime detection end-to-end", criterion_regime_detection},
    {8, "determinism across runs and threads", criterion_determinism},
    {9, "desk-scale throughput", criterion_throughput},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) {
        wanted.insert(std::atoi(argv[i]));
    }
    int failures = 0;
    for (const auto& criterion : kCriteria) {
        if (!wanted.empty() && !wanted.count(criterion.number)) continue;
        Outcome outcome{false, "exception"};
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << criterion.number << ". "
                  << criterion.name << ": " << outcome.detail << "\n";
        if (!outcome.pass) ++failures;
    }
    return failures;
}

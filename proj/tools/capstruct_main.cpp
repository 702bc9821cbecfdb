#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "capstruct/errors.hpp"
#include "capstruct/pipeline.hpp"

namespace {

using capstruct::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--prices", config.prices_path, "Daily price panel CSV");
    cmd->add_option("--caps", config.caps_path, "Monthly market-cap panel CSV");
    cmd->add_option("-o,--out", config.out_dir, "Output directory")
        ->capture_default_str();
    cmd->add_option("--rho", config.rho, "Rolling daily window length")
        ->capture_default_str();
    cmd->add_option("--tau", config.tau, "Trailing monthly window length")
        ->capture_default_str();
    cmd->add_option("--cap-b", config.cap_b, "Per-asset weight cap b")
        ->capture_default_str();
    cmd->add_option("--risk-free", config.risk_free, "Risk-free rate per day")
        ->capture_default_str();
    cmd->add_option("--return-mode",
                    [&config](const CLI::results_t& res) {
                        config.return_mode = res[0] == "log" ? capstruct::ReturnMode::Log
                                                             : capstruct::ReturnMode::Simple;
                        return res[0] == "log" || res[0] == "simple";
                    },
                    "Return definition: simple|log")
        ->default_str("simple");
    cmd->add_option("--linkage",
                    [&config](const CLI::results_t& res) {
                        config.linkage = capstruct::linkage_from_string(res[0]);
                        return true;
                    },
                    "Clustering linkage: single|complete|average|ward")
        ->default_str("average");
    cmd->add_option("--gini-mode",
                    [&config](const CLI::results_t& res) {
                        if (res[0] == "canonical") {
                            config.gini_mode = capstruct::GiniMode::Canonical;
                        } else if (res[0] == "paper-literal") {
                            config.gini_mode = capstruct::GiniMode::PaperLiteral;
                        } else {
                            return false;
                        }
                        return true;
                    },
                    "Portfolio Gini prefactor: canonical|paper-literal")
        ->default_str("canonical");
    cmd->add_option("--missing-policy",
                    [&config](const CLI::results_t& res) {
                        if (res[0] == "drop-per-month") {
                            config.missing_policy = capstruct::MissingPolicy::DropPerMonth;
                        } else if (res[0] == "full-history") {
                            config.missing_policy = capstruct::MissingPolicy::FullHistoryOnly;
                        } else {
                            return false;
                        }
                        return true;
                    },
                    "Gini missing-data policy: drop-per-month|full-history")
        ->default_str("drop-per-month");
    cmd->add_option("--ks", config.ks, "Concentration ratio k values")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "Solver multi-start seed")
        ->capture_default_str();
    cmd->add_option("--threads", config.threads, "Worker threads (0 = auto)")
        ->capture_default_str();
}

void add_synth_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--assets", config.synth.assets, "Synthetic asset count")
        ->capture_default_str();
    cmd->add_option("--months", config.synth.months, "Synthetic month count")
        ->capture_default_str();
    cmd->add_option("--days", config.synth.days, "Synthetic trading day count")
        ->capture_default_str();
    cmd->add_option("--break-month", config.synth.break_month,
                    "First month of the planted cap regime (0 = none)")
        ->capture_default_str();
    cmd->add_option("--break-magnitude", config.synth.break_magnitude,
                    "Regime blend toward uniform, in [0,1]")
        ->capture_default_str();
    cmd->add_option("--noise", config.synth.noise, "Per-cell cap noise")
        ->capture_default_str();
    cmd->add_option("--ramp", config.synth.ramp,
                    "Concentration ramp strength for the largest assets")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Market-cap structure metrics and rolling Sharpe-portfolio functionals"};
    app.require_subcommand(1);
    app.fallthrough();
    // Flags override the config file, which overrides defaults. Keys live in
    // a [subcommand] section, e.g. [structure] / caps=... / ks=1,2,3.
    app.set_config("--config", "", "Read options from a key=value config file");

    RunConfig config;

    auto* structure = app.add_subcommand(
        "structure", "Concentration, Gini, Wasserstein regime clustering");
    add_common_options(structure, config);

    auto* optimize = app.add_subcommand(
        "optimize", "Rolling Sharpe optimization and weight trajectory clustering");
    add_common_options(optimize, config);

    auto* functionals = app.add_subcommand(
        "functionals", "Exposure, normalized exposure, and portfolio Gini series");
    add_common_options(functionals, config);
    functionals->add_flag("--uniform-weights", config.uniform_weights,
                          "Replace optimal weights by the uniform portfolio");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic price/cap panel pair");
    add_common_options(synth, config);
    add_synth_options(synth, config);

    auto* all = app.add_subcommand("all", "Full pipeline: structure, optimize, functionals");
    add_common_options(all, config);
    all->add_flag("--uniform-weights", config.uniform_weights,
                  "Replace optimal weights by the uniform portfolio");

    CLI11_PARSE(app, argc, argv);

    try {
        config.synth.seed = config.seed;
        if (structure->parsed()) {
            capstruct::run_structure(config);
        } else if (optimize->parsed()) {
            capstruct::run_optimize(config);
        } else if (functionals->parsed()) {
            capstruct::run_functionals(config);
        } else if (synth->parsed()) {
            capstruct::run_synth(config);
        } else if (all->parsed()) {
            capstruct::run_all(config);
        }
    } catch (const capstruct::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const capstruct::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#ifndef CAPSTRUCT_PIPELINE_HPP
#define CAPSTRUCT_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "capstruct/cluster.hpp"
#include "capstruct/functionals.hpp"
#include "capstruct/structure.hpp"
#include "capstruct/synth.hpp"

namespace capstruct {

/// Full run configuration; CLI flags map onto these fields one-to-one.
struct RunConfig {
    std::string prices_path;
    std::string caps_path;
    std::string out_dir = "out";

    std::size_t rho = 180; // rolling daily window
    std::size_t tau = 6;   // trailing monthly window
    double cap_b = 0.15;
    double risk_free = 0.0;
    ReturnMode return_mode = ReturnMode::Simple;
    Linkage linkage = Linkage::Average;
    GiniMode gini_mode = GiniMode::Canonical;
    MissingPolicy missing_policy = MissingPolicy::DropPerMonth;
    std::vector<std::size_t> ks = {1, 2, 3, 5, 10, 20};
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0 = hardware concurrency
    bool uniform_weights = false;

    SynthConfig synth;
};

/// Run summary mirrored into report.json: config echo, derived panel
/// dimensions, and solver warnings.
struct Report {
    std::size_t n = 0; // assets in the raw cap panel
    std::size_t m = 0; // assets surviving full-history restriction
    std::size_t T = 0; // months
    std::size_t S = 0; // daily returns
    std::vector<std::string> warnings;
};

/// Fixed output filenames per subcommand (all inside config.out_dir):
///   structure:   concentration.csv/.svg, gini.csv/.svg,
///                wasserstein_matrix.csv/.svg, dendrogram.json/.svg
///   optimize:    weights.csv/.svg, weight_dendrogram.json/.svg
///   functionals: functionals.csv, exposure.svg, normalized_exposure.svg,
///                portfolio_gini.svg, portfolio_matrix.csv/.svg,
///                portfolio_dendrogram.json/.svg
///   synth:       prices.csv, caps.csv
/// Every run also writes report.json.
Report run_structure(const RunConfig& config);
Report run_optimize(const RunConfig& config);
Report run_functionals(const RunConfig& config);
Report run_synth(const RunConfig& config);
Report run_all(const RunConfig& config);

std::string dendrogram_to_json(const Dendrogram& dend);
Dendrogram dendrogram_from_json(const std::string& text);

std::string report_to_json(const RunConfig& config, const Report& report);

} // namespace capstruct

#endif // CAPSTRUCT_PIPELINE_HPP

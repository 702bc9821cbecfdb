#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capstruct/cluster.hpp"
#include "capstruct/errors.hpp"
#include "capstruct/functionals.hpp"
#include "capstruct/optimizer.hpp"
#include "capstruct/structure.hpp"
#include "capstruct/synth.hpp"
#include "capstruct/wasserstein.hpp"

namespace py = pybind11;
using namespace capstruct;

namespace {

DistanceMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows,
                                std::vector<std::string> labels) {
    DistanceMatrix m;
    const std::size_t n = rows.size();
    if (labels.empty()) {
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    m.labels = std::move(labels);
    m.entries.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw ContractError("distance matrix rows must be square");
        }
        for (double v : row) m.entries.push_back(v);
    }
    return m;
}

GiniMode gini_mode_from(const std::string& name) {
    if (name == "canonical") return GiniMode::Canonical;
    if (name == "paper_literal") return GiniMode::PaperLiteral;
    throw ContractError("unknown gini mode '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_capstruct, m) {
    m.doc() = "Market-cap structure metrics, Wasserstein regime distances, and "
              "capped-simplex Sharpe optimization";

    py::register_exception<Error>(m, "CapstructError", PyExc_RuntimeError);

    // Inequality and concentration.
    m.def("gini", [](const std::vector<double>& values) { return gini(values); },
          py::arg("values"), "Gini coefficient of nonnegative values");
    m.def("concentration_ratio",
          [](const std::vector<double>& values, std::size_t k) {
              return concentration_ratio(values, k);
          },
          py::arg("values"), py::arg("k"),
          "Share of the total held by the k largest values");
    m.def("lorenz_curve",
          [](const std::vector<double>& values) { return lorenz_curve(values).points; },
          py::arg("values"), "Lorenz curve vertices from (0,0) to (1,1)");
    m.def("lorenz_area",
          [](const std::vector<double>& values) { return lorenz_curve(values).area(); },
          py::arg("values"), "Trapezoidal area under the Lorenz curve");

    // Wasserstein distances.
    m.def("wasserstein",
          [](std::vector<double> va, std::vector<double> wa, std::vector<double> vb,
             std::vector<double> wb) {
              return wasserstein(DiscreteDistribution::make(std::move(va), std::move(wa)),
                                 DiscreteDistribution::make(std::move(vb), std::move(wb)));
          },
          py::arg("values_a"), py::arg("weights_a"), py::arg("values_b"), py::arg("weights_b"),
          "Exact 1-Wasserstein distance between weighted discrete distributions");
    m.def("wasserstein_uniform",
          [](std::vector<double> va, std::vector<double> vb) {
              return wasserstein(DiscreteDistribution::uniform(std::move(va)),
                                 DiscreteDistribution::uniform(std::move(vb)));
          },
          py::arg("values_a"), py::arg("values_b"),
          "1-Wasserstein distance with uniform weights on both supports");
    m.def("wasserstein_equal_n",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return wasserstein_equal_n(a, b);
          },
          py::arg("values_a"), py::arg("values_b"),
          "Closed form for equal-size uniform supports");

    // Clustering.
    py::class_<Dendrogram>(m, "Dendrogram")
        .def_property_readonly("leaf_labels",
                               [](const Dendrogram& d) { return d.leaf_labels; })
        .def_property_readonly("merges",
                               [](const Dendrogram& d) {
                                   py::list out;
                                   for (const auto& mg : d.merges) {
                                       out.append(py::make_tuple(mg.left, mg.right, mg.height,
                                                                 mg.size));
                                   }
                                   return out;
                               })
        .def("cut", [](const Dendrogram& d, std::size_t k) { return cut(d, k); },
             py::arg("k"), "Partition labels after undoing the last k-1 merges")
        .def("leaf_order", [](const Dendrogram& d) { return leaf_order(d); },
             "Depth-first left-to-right leaf sequence");

    m.def("agglomerate",
          [](const std::vector<std::vector<double>>& matrix, std::vector<std::string> labels,
             const std::string& linkage) {
              return agglomerate(matrix_from_rows(matrix, std::move(labels)),
                                 linkage_from_string(linkage));
          },
          py::arg("matrix"), py::arg("labels") = std::vector<std::string>{},
          py::arg("linkage") = "average",
          "Agglomerative clustering of a symmetric distance matrix");
    m.def("l1_trajectory_distance",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return l1_trajectory_distance(a, b);
          },
          py::arg("wi"), py::arg("wj"));

    // Optimization.
    m.def("project_capped_simplex",
          [](const Eigen::VectorXd& v, double b) { return project_capped_simplex(v, b); },
          py::arg("v"), py::arg("b"),
          "Euclidean projection onto {w : sum w = 1, 0 <= w_i <= b}");
    m.def("sharpe",
          [](const Eigen::VectorXd& w, const Eigen::VectorXd& means,
             const Eigen::MatrixXd& cov, double risk_free) {
              OptimizationInputs in;
              in.mean_returns = means;
              in.covariance = cov;
              in.risk_free = risk_free;
              in.cap_b = 1.0;
              return sharpe(w, in);
          },
          py::arg("w"), py::arg("means"), py::arg("cov"), py::arg("risk_free") = 0.0);
    m.def("maximize_sharpe",
          [](const Eigen::VectorXd& means, const Eigen::MatrixXd& cov, double risk_free,
             double cap_b, std::uint64_t seed) {
              OptimizationInputs in;
              in.mean_returns = means;
              in.covariance = cov;
              in.risk_free = risk_free;
              in.cap_b = cap_b;
              SolverOptions opt;
              opt.seed = seed;
              SolveResult res = maximize_sharpe(in, opt);
              py::dict out;
              out["weights"] = res.weights;
              out["sharpe"] = res.sharpe;
              out["converged"] = res.converged;
              out["iterations"] = res.iterations;
              return out;
          },
          py::arg("means"), py::arg("cov"), py::arg("risk_free") = 0.0,
          py::arg("cap_b") = 0.15, py::arg("seed") = 0,
          "Projected-gradient Sharpe maximization over the capped simplex");

    // Portfolio functionals.
    m.def("portfolio_gini",
          [](const std::vector<double>& values, const std::vector<double>& weights,
             const std::string& mode) {
              return portfolio_gini(values, weights, gini_mode_from(mode));
          },
          py::arg("values"), py::arg("weights"), py::arg("mode") = "canonical",
          "Weighted Gini of values under probability weights");
    m.def("exposure",
          [](const std::vector<double>& weights, const std::vector<double>& caps) {
              return exposure(weights, caps);
          },
          py::arg("weights"), py::arg("caps"), "Weighted market-cap exposure");

    // Synthetic panels, as CSV text for scripting.
    m.def("generate_synthetic_csv",
          [](std::size_t assets, std::size_t months, std::size_t days, std::uint64_t seed,
             std::size_t break_month, double break_magnitude, double noise, double ramp) {
              SynthConfig cfg;
              cfg.assets = assets;
              cfg.months = months;
              cfg.days = days;
              cfg.seed = seed;
              cfg.break_month = break_month;
              cfg.break_magnitude = break_magnitude;
              cfg.noise = noise;
              cfg.ramp = ramp;
              auto [prices, caps] = generate_synthetic(cfg);
              return py::make_tuple(panel_to_csv(prices), panel_to_csv(caps));
          },
          py::arg("assets") = 20, py::arg("months") = 24, py::arg("days") = 600,
          py::arg("seed") = 1, py::arg("break_month") = 0,
          py::arg("break_magnitude") = 0.5, py::arg("noise") = 0.02, py::arg("ramp") = 0.0,
          "Deterministic synthetic (prices_csv, caps_csv) pair");
}

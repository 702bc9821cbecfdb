#include "capstruct/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "capstruct/errors.hpp"
#include "capstruct/parallel.hpp"

namespace capstruct {

namespace {

constexpr double kWeightTol = 1e-12;

// Support sorted by value, zero-weight atoms removed.
struct SortedSupport {
    std::vector<double> values;
    std::vector<double> weights;
};

SortedSupport sorted_support(const DiscreteDistribution& d) {
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d.values[a] < d.values[b]; });
    SortedSupport s;
    s.values.reserve(d.size());
    s.weights.reserve(d.size());
    for (std::size_t i : order) {
        if (d.weights[i] > 0.0) {
            s.values.push_back(d.values[i]);
            s.weights.push_back(d.weights[i]);
        }
    }
    return s;
}

} // namespace

DiscreteDistribution DiscreteDistribution::make(std::vector<double> values,
                                                std::vector<double> weights) {
    if (values.size() != weights.size()) {
        throw ContractError("distribution values and weights differ in length");
    }
    if (values.empty()) {
        throw UndefinedValueError("empty distribution");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ContractError("negative distribution weight");
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightTol) {
        throw ContractError("distribution weights sum to " + std::to_string(total) +
                            ", expected 1");
    }
    DiscreteDistribution d;
    d.values = std::move(values);
    d.weights = std::move(weights);
    return d;
}

DiscreteDistribution DiscreteDistribution::uniform(std::vector<double> values) {
    if (values.empty()) {
        throw UndefinedValueError("empty distribution");
    }
    std::vector<double> w(values.size(), 1.0 / static_cast<double>(values.size()));
    DiscreteDistribution d;
    d.values = std::move(values);
    d.weights = std::move(w);
    return d;
}

void DistanceMatrix::validate() const {
    const std::size_t n = size();
    if (entries.size() != n * n) {
        throw ContractError("distance matrix entry count does not match labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) != 0.0) {
            throw ContractError("distance matrix diagonal not zero");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (at(i, j) < 0.0) {
                throw ContractError("negative distance entry");
            }
            if (std::abs(at(i, j) - at(j, i)) > 1e-12) {
                throw ContractError("distance matrix not symmetric");
            }
        }
    }
}

double wasserstein(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    SortedSupport sa = sorted_support(a);
    SortedSupport sb = sorted_support(b);
    // Walk both quantile functions over the merged cumulative-weight partition.
    std::size_t ia = 0, ib = 0;
    double rem_a = sa.weights.empty() ? 0.0 : sa.weights[0];
    double rem_b = sb.weights.empty() ? 0.0 : sb.weights[0];
    double dist = 0.0;
    while (ia < sa.values.size() && ib < sb.values.size()) {
        double mass = std::min(rem_a, rem_b);
        dist += mass * std::abs(sa.values[ia] - sb.values[ib]);
        rem_a -= mass;
        rem_b -= mass;
        if (rem_a <= 0.0) {
            ++ia;
            rem_a = ia < sa.weights.size() ? sa.weights[ia] : 0.0;
        }
        if (rem_b <= 0.0) {
            ++ib;
            rem_b = ib < sb.weights.size() ? sb.weights[ib] : 0.0;
        }
    }
    // Any residual mass on one side is rounding noise (totals are 1 +- 1e-12).
    return dist;
}

double wasserstein_equal_n(std::span<const double> vals_a, std::span<const double> vals_b) {
    if (vals_a.size() != vals_b.size()) {
        throw ContractError("equal-n form needs equal support sizes");
    }
    if (vals_a.empty()) {
        throw UndefinedValueError("empty distribution");
    }
    std::vector<double> a(vals_a.begin(), vals_a.end());
    std::vector<double> b(vals_b.begin(), vals_b.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]);
    }
    return sum / static_cast<double>(a.size());
}

DiscreteDistribution normalized_cap_distribution(const CapPanel& caps, std::size_t t) {
    if (t >= caps.rows()) {
        throw ContractError("month index out of range");
    }
    auto present = caps.row_present(t);
    if (present.empty()) {
        throw UndefinedValueError("no caps present in month " + caps.dates()[t].iso());
    }
    double total = std::accumulate(present.begin(), present.end(), 0.0);
    for (double& v : present) v /= total;
    return DiscreteDistribution::uniform(std::move(present));
}

DistanceMatrix distance_matrix(const std::vector<DiscreteDistribution>& dists,
                               std::vector<std::string> labels,
                               unsigned threads) {
    const std::size_t n = dists.size();
    if (n < 2) {
        throw ContractError("distance matrix needs at least two distributions");
    }
    if (labels.size() != n) {
        throw ContractError("label count does not match distribution count");
    }
    DistanceMatrix m;
    m.labels = std::move(labels);
    m.entries.assign(n * n, 0.0);
    // Flattened upper triangle; each pair writes its own two mirrored slots.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    parallel_for(pairs.size(), threads, [&](std::size_t p) {
        auto [i, j] = pairs[p];
        double d = wasserstein(dists[i], dists[j]);
        m.entries[i * n + j] = d;
        m.entries[j * n + i] = d;
    });
    return m;
}

} // namespace capstruct

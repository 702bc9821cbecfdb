#include "capstruct/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capstruct/errors.hpp"

namespace capstruct {

Linkage linkage_from_string(const std::string& name) {
    if (name == "single") return Linkage::Single;
    if (name == "complete") return Linkage::Complete;
    if (name == "average") return Linkage::Average;
    if (name == "ward") return Linkage::Ward;
    throw ContractError("unknown linkage '" + name + "'");
}

std::string linkage_name(Linkage linkage) {
    switch (linkage) {
        case Linkage::Single: return "single";
        case Linkage::Complete: return "complete";
        case Linkage::Average: return "average";
        case Linkage::Ward: return "ward";
    }
    return "average";
}

double l1_trajectory_distance(std::span<const double> wi, std::span<const double> wj) {
    if (wi.size() != wj.size()) {
        throw ContractError("weight trajectories differ in length");
    }
    double sum = 0.0;
    for (std::size_t s = 0; s < wi.size(); ++s) {
        sum += std::abs(wi[s] - wj[s]);
    }
    return sum;
}

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
    d.validate();
    const std::size_t n = d.size();
    if (n < 2) {
        throw ContractError("clustering needs at least two items");
    }

    // active[id] for live clusters; dist keyed by position in `active`.
    // Cluster ids: leaves 0..n-1, merge k creates id n+k.
    std::vector<std::size_t> id(n);
    std::vector<std::size_t> size(n, 1);
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        id[i] = i;
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = d.at(i, j);
    }

    Dendrogram out;
    out.leaf_labels = d.labels;
    out.merges.reserve(n - 1);

    std::size_t live = n;
    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Nearest pair; ties resolved on (min id, max id).
        std::size_t bi = 0, bj = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < live; ++i) {
            for (std::size_t j = i + 1; j < live; ++j) {
                double v = dist[i][j];
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                } else if (v == best) {
                    auto key = std::minmax(id[i], id[j]);
                    auto cur = std::minmax(id[bi], id[bj]);
                    if (key < cur) {
                        bi = i;
                        bj = j;
                    }
                }
            }
        }

        const std::size_t ni = size[bi], nj = size[bj];
        const double dij = dist[bi][bj];
        out.merges.push_back({std::min(id[bi], id[bj]), std::max(id[bi], id[bj]),
                              dij, ni + nj});

        // Lance-Williams update into slot bi, then drop slot bj.
        for (std::size_t k = 0; k < live; ++k) {
            if (k == bi || k == bj) continue;
            double dik = dist[bi][k];
            double djk = dist[bj][k];
            double merged = 0.0;
            switch (linkage) {
                case Linkage::Single:
                    merged = std::min(dik, djk);
                    break;
                case Linkage::Complete:
                    merged = std::max(dik, djk);
                    break;
                case Linkage::Average:
                    merged = (static_cast<double>(ni) * dik + static_cast<double>(nj) * djk) /
                             static_cast<double>(ni + nj);
                    break;
                case Linkage::Ward: {
                    double nk = static_cast<double>(size[k]);
                    double total = static_cast<double>(ni + nj) + nk;
                    double sq = ((static_cast<double>(ni) + nk) * dik * dik +
                                 (static_cast<double>(nj) + nk) * djk * djk -
                                 nk * dij * dij) /
                                total;
                    merged = std::sqrt(std::max(sq, 0.0));
                    break;
                }
            }
            dist[bi][k] = merged;
            dist[k][bi] = merged;
        }
        id[bi] = n + step;
        size[bi] = ni + nj;

        // Swap the dead slot to the end.
        std::size_t lastpos = live - 1;
        if (bj != lastpos) {
            std::swap(id[bj], id[lastpos]);
            std::swap(size[bj], size[lastpos]);
            for (std::size_t k = 0; k < live; ++k) {
                std::swap(dist[bj][k], dist[lastpos][k]);
            }
            for (std::size_t k = 0; k < live; ++k) {
                std::swap(dist[k][bj], dist[k][lastpos]);
            }
        }
        --live;
    }
    return out;
}

std::vector<std::size_t> cut(const Dendrogram& dend, std::size_t k) {
    const std::size_t n = dend.leaf_count();
    if (k < 1 || k > n) {
        throw ContractError("cluster count k out of range [1, n]");
    }
    // Keep the first n-k merges; union-find over node ids.
    std::vector<std::size_t> parent(2 * n - 1);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t step = 0; step + k < n; ++step) {
        const auto& m = dend.merges[step];
        std::size_t node = n + step;
        parent[find(m.left)] = node;
        parent[find(m.right)] = node;
    }
    std::vector<std::size_t> labels(n);
    std::vector<std::size_t> root_label(2 * n - 1, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        std::size_t r = find(leaf);
        if (root_label[r] == SIZE_MAX) root_label[r] = next++;
        labels[leaf] = root_label[r];
    }
    return labels;
}

std::vector<std::size_t> leaf_order(const Dendrogram& dend) {
    const std::size_t n = dend.leaf_count();
    if (n == 0) return {};
    if (n == 1) return {0};
    std::vector<std::size_t> order;
    order.reserve(n);
    // Iterative DFS from the root (last merge), left child first.
    std::vector<std::size_t> stack{2 * n - 2};
    while (!stack.empty()) {
        std::size_t node = stack.back();
        stack.pop_back();
        if (node < n) {
            order.push_back(node);
        } else {
            const auto& m = dend.merges[node - n];
            stack.push_back(m.right);
            stack.push_back(m.left);
        }
    }
    return order;
}

} // namespace capstruct

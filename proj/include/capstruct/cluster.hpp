#ifndef CAPSTRUCT_CLUSTER_HPP
#define CAPSTRUCT_CLUSTER_HPP

#include <span>
#include <string>
#include <vector>

#include "capstruct/wasserstein.hpp"

namespace capstruct {

enum class Linkage { Single, Complete, Average, Ward };

Linkage linkage_from_string(const std::string& name);
std::string linkage_name(Linkage linkage);

/// Binary merge tree from agglomerative clustering. Node ids follow the
/// usual convention: leaves are 0..n-1, the k-th merge creates node n+k.
struct Dendrogram {
    struct Merge {
        std::size_t left;
        std::size_t right;
        double height;
        std::size_t size; // leaves under the new node
    };
    std::vector<Merge> merges; // exactly n-1 for n leaves
    std::vector<std::string> leaf_labels;

    std::size_t leaf_count() const { return leaf_labels.size(); }
};

/// L1 distance between two weight trajectories of equal length.
double l1_trajectory_distance(std::span<const double> wi, std::span<const double> wj);

/// Agglomerative clustering with the classic O(n^3) nearest-pair scan.
/// Ties on the minimal linkage distance merge the pair with the
/// lexicographically smallest (older id, younger id), so output is
/// bit-identical across runs and platforms.
Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage);

/// Partition obtained by undoing the last k-1 merges. Labels are contiguous
/// integers assigned in leaf order (first appearance scanning leaves 0..n-1).
std::vector<std::size_t> cut(const Dendrogram& dend, std::size_t k);

/// Left-to-right leaf sequence from depth-first traversal of the merge tree.
std::vector<std::size_t> leaf_order(const Dendrogram& dend);

} // namespace capstruct

#endif // CAPSTRUCT_CLUSTER_HPP

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "textpart/linalg.hpp"
#include "textpart/partition.hpp"

namespace textpart {

struct TreeNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::size_t depth = 0;
  std::vector<std::size_t> members;
  DenseVec centroid;
  double scatter = 0.0;
  DenseVec direction;  ///< set on internal nodes only
  std::optional<std::size_t> left;
  std::optional<std::size_t> right;
  bool final = false;  ///< leaf that must not be split again

  bool is_leaf() const { return !left.has_value(); }
};

/// Binary tree of PDDP splits. Node ids are creation order; the leaves form
/// the current partition.
class ClusterTree {
 public:
  ClusterTree() = default;
  ClusterTree(const CsrMatrix& m, ScatterMode mode);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(std::size_t id) const { return nodes_.at(id); }
  ScatterMode scatter_mode() const { return mode_; }

  /// Leaf ids in creation order; leaf i of this list is cluster i.
  std::vector<std::size_t> leaves() const;
  std::size_t leaf_count() const { return leaf_count_; }

  Partition partition() const;

  /// Partition that would result from replacing `leaf` by (left, right).
  Partition partition_after_split(std::size_t leaf, std::span<const std::size_t> left,
                                  std::span<const std::size_t> right) const;

  /// Turns `leaf` into an internal node with two new children.
  void split(const CsrMatrix& m, std::size_t leaf, std::vector<std::size_t> left,
             std::vector<std::size_t> right, DenseVec direction);

  void mark_final(std::size_t leaf) { nodes_.at(leaf).final = true; }

  /// Node ids in the order they were split.
  const std::vector<std::size_t>& split_order() const { return split_order_; }

  /// Set when the stopping rule could not be met because no leaf was splittable.
  bool exhausted_early = false;

 private:
  std::size_t add_node(const CsrMatrix& m, std::optional<std::size_t> parent,
                       std::vector<std::size_t> members);

  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> split_order_;
  std::size_t leaf_count_ = 0;
  ScatterMode mode_ = ScatterMode::MeanDistance;
  std::size_t n_docs_ = 0;
};

struct SplitResult {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  DenseVec direction;
};

/// Bisects members by the hyperplane through their centroid normal to their
/// principal direction. Projection <= 0 goes left. Throws
/// DegenerateClusterError when the rows are identical.
SplitResult split_cluster(const CsrMatrix& m, std::span<const std::size_t> members,
                          std::uint64_t seed);

/// Splittable leaf (>= 2 members, not final) with the largest scatter;
/// ties go to the smaller id. Throws ExhaustedError if there is none.
std::size_t select_leaf(const ClusterTree& tree);

enum class StopRule { Fixed, Csv, Bic };

struct PddpOptions {
  StopRule stop = StopRule::Fixed;
  std::size_t k = 2;  ///< target leaf count for StopRule::Fixed
  ScatterMode scatter = ScatterMode::MeanDistance;
  std::uint64_t seed = 0;
  std::size_t max_leaves = 0;  ///< 0 = no cap (applies to Csv and Bic)
};

ClusterTree pddp_run(const CsrMatrix& m, const PddpOptions& options);

}  // namespace textpart

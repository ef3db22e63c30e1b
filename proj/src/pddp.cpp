#include "textpart/pddp.hpp"

#include <cassert>
#include <string>

#include "textpart/error.hpp"
#include "textpart/model_select.hpp"
#include "textpart/random.hpp"

namespace textpart {

ClusterTree::ClusterTree(const CsrMatrix& m, ScatterMode mode)
    : mode_(mode), n_docs_(m.rows()) {
  add_node(m, std::nullopt, all_rows(m.rows()));
}

std::size_t ClusterTree::add_node(const CsrMatrix& m, std::optional<std::size_t> parent,
                                  std::vector<std::size_t> members) {
  TreeNode node;
  node.id = nodes_.size();
  node.parent = parent;
  node.depth = parent ? nodes_[*parent].depth + 1 : 0;
  auto stats = cluster_stats(m, std::move(members), mode_);
  node.members = std::move(stats.members);
  node.centroid = std::move(stats.centroid);
  node.scatter = stats.scatter;
  nodes_.push_back(std::move(node));
  ++leaf_count_;
  return nodes_.back().id;
}

std::vector<std::size_t> ClusterTree::leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_) {
    if (n.is_leaf()) out.push_back(n.id);
  }
  return out;
}

Partition ClusterTree::partition() const {
  Partition p;
  const auto leaf_ids = leaves();
  p.k = leaf_ids.size();
  p.assignment.assign(n_docs_, 0);
  for (std::size_t c = 0; c < leaf_ids.size(); ++c) {
    for (auto i : nodes_[leaf_ids[c]].members) p.assignment[i] = c;
  }
  return p;
}

Partition ClusterTree::partition_after_split(std::size_t leaf,
                                             std::span<const std::size_t> left,
                                             std::span<const std::size_t> right) const {
  // New children get the next two ids, so they sort after every existing leaf.
  Partition p;
  const auto leaf_ids = leaves();
  p.k = leaf_ids.size() + 1;
  p.assignment.assign(n_docs_, 0);
  std::size_t c = 0;
  for (auto id : leaf_ids) {
    if (id == leaf) continue;
    for (auto i : nodes_[id].members) p.assignment[i] = c;
    ++c;
  }
  for (auto i : left) p.assignment[i] = c;
  for (auto i : right) p.assignment[i] = c + 1;
  return p;
}

void ClusterTree::split(const CsrMatrix& m, std::size_t leaf, std::vector<std::size_t> left,
                        std::vector<std::size_t> right, DenseVec direction) {
  if (!nodes_.at(leaf).is_leaf()) throw Error("node " + std::to_string(leaf) + " is not a leaf");
  const auto l = add_node(m, leaf, std::move(left));
  const auto r = add_node(m, leaf, std::move(right));
  auto& parent = nodes_[leaf];
  parent.left = l;
  parent.right = r;
  parent.direction = std::move(direction);
  --leaf_count_;
  split_order_.push_back(leaf);
}

SplitResult split_cluster(const CsrMatrix& m, std::span<const std::size_t> members,
                          std::uint64_t seed) {
  if (members.size() < 2) throw Error("cannot split a cluster with fewer than two members");
  auto pd = principal_direction(m, members, seed);
  const auto w = centroid(m, members);
  const double offset = dot(pd.direction, w);

  SplitResult out;
  for (auto i : members) {
    const double projection = dot(m.row(i), pd.direction) - offset;
    (projection <= 0.0 ? out.left : out.right).push_back(i);
  }
  if (out.left.empty() || out.right.empty()) {
    // Positive variance along u forces points on both sides of the mean.
    throw std::logic_error("principal-direction split produced an empty side");
  }
  out.direction = std::move(pd.direction);
  return out;
}

std::size_t select_leaf(const ClusterTree& tree) {
  std::optional<std::size_t> best;
  for (const auto& n : tree.nodes()) {
    if (!n.is_leaf() || n.final || n.members.size() < 2) continue;
    if (!best || n.scatter > tree.node(*best).scatter) best = n.id;
  }
  if (!best) throw ExhaustedError();
  return *best;
}

ClusterTree pddp_run(const CsrMatrix& m, const PddpOptions& options) {
  if (m.rows() < 2) throw Error("PDDP needs at least two documents");
  if (options.stop == StopRule::Fixed && options.k < 1) throw Error("k must be at least 1");

  ClusterTree tree(m, options.scatter);
  for (;;) {
    const auto leaves = tree.leaf_count();
    if (options.stop == StopRule::Fixed && leaves >= options.k) break;
    if (options.stop == StopRule::Csv && csv_stop(tree)) break;
    if (options.stop != StopRule::Fixed && options.max_leaves != 0 &&
        leaves >= options.max_leaves) {
      break;
    }

    std::size_t leaf = 0;
    try {
      leaf = select_leaf(tree);
    } catch (const ExhaustedError&) {
      // Running out of candidates is how the BIC rule normally ends.
      tree.exhausted_early = options.stop != StopRule::Bic;
      break;
    }

    SplitResult split;
    try {
      split = split_cluster(m, tree.node(leaf).members, derive_seed(options.seed, leaf));
    } catch (const DegenerateClusterError&) {
      tree.mark_final(leaf);
      continue;
    }

    if (options.stop == StopRule::Bic) {
      const auto before = tree.partition();
      const auto after = tree.partition_after_split(leaf, split.left, split.right);
      if (!bic_split_test(m, split.left, split.right, before, after).accept) {
        tree.mark_final(leaf);
        continue;
      }
    }
    tree.split(m, leaf, std::move(split.left), std::move(split.right),
               std::move(split.direction));
  }
  return tree;
}

}  // namespace textpart

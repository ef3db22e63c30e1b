#include "textpart/model_select.hpp"

#include <algorithm>
#include <cmath>

#include "textpart/error.hpp"
#include "textpart/sgem.hpp"

namespace textpart {

std::size_t param_count(std::size_t k, std::size_t d) {
  if (k < 1 || d < 1) throw Error("param_count needs k >= 1 and d >= 1");
  return (k - 1) + k * d + 1;
}

BICScore make_bic(double loglik, std::size_t params, std::size_t n) {
  BICScore s;
  s.loglik = loglik;
  s.param_count = params;
  s.n = n;
  s.value = loglik - 0.5 * static_cast<double>(params) * std::log(static_cast<double>(n));
  return s;
}

BICScore bic_score(const Partition& partition, const CsrMatrix& m) {
  HardAssignment z = partition.assignment;
  const auto model = m_step(m, z, partition.k);
  return make_bic(complete_log_likelihood(model, z, m), param_count(partition.k, m.cols()),
                  m.rows());
}

SplitTest bic_split_test(const CsrMatrix& m, std::span<const std::size_t> left,
                         std::span<const std::size_t> right, const Partition& before,
                         const Partition& after) {
  std::vector<std::size_t> parent_rows(left.begin(), left.end());
  parent_rows.insert(parent_rows.end(), right.begin(), right.end());
  const auto local = m.select_rows(parent_rows);

  Partition whole{1, HardAssignment(parent_rows.size(), 0)};
  Partition halves{2, HardAssignment(parent_rows.size(), 0)};
  std::fill(halves.assignment.begin() + static_cast<std::ptrdiff_t>(left.size()),
            halves.assignment.end(), 1);

  SplitTest t;
  t.local_parent = bic_score(whole, local);
  t.local_children = bic_score(halves, local);
  t.global_before = bic_score(before, m);
  t.global_after = bic_score(after, m);
  t.accept = t.local_children.value > t.local_parent.value &&
             t.global_after.value > t.global_before.value;
  return t;
}

double csv(const ClusterTree& tree) {
  std::vector<DenseVec> centers;
  for (auto id : tree.leaves()) centers.push_back(tree.node(id).centroid);
  const auto points = CsrMatrix::from_dense(centers);
  const auto rows = all_rows(points.rows());
  return scatter_value(points, rows, centroid(points, rows), tree.scatter_mode());
}

bool csv_stop(const ClusterTree& tree) {
  const auto leaves = tree.leaves();
  if (leaves.size() < 2) return false;
  double max_scatter = 0.0;
  for (auto id : leaves) max_scatter = std::max(max_scatter, tree.node(id).scatter);
  return csv(tree) > max_scatter;
}

}  // namespace textpart

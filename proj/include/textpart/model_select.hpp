#pragma once

#include <cstddef>
#include <span>

#include "textpart/linalg.hpp"
#include "textpart/partition.hpp"
#include "textpart/pddp.hpp"

namespace textpart {

struct BICScore {
  double loglik = 0.0;
  std::size_t param_count = 0;
  std::size_t n = 0;
  double value = 0.0;  ///< loglik - (param_count / 2) log n
};

/// (k - 1) priors + k*d centroid coordinates + 1 variance.
std::size_t param_count(std::size_t k, std::size_t d);

BICScore make_bic(double loglik, std::size_t params, std::size_t n);

/// Fits the spherical model to the partition with one M-step and scores it.
BICScore bic_score(const Partition& partition, const CsrMatrix& m);

struct SplitTest {
  BICScore local_parent;
  BICScore local_children;
  BICScore global_before;
  BICScore global_after;
  bool accept = false;
};

/// Accepts iff BIC strictly improves both locally (parent rows as k=1 vs the
/// two children) and globally (whole partition before vs after).
SplitTest bic_split_test(const CsrMatrix& m, std::span<const std::size_t> left,
                         std::span<const std::size_t> right, const Partition& before,
                         const Partition& after);

/// Scatter of the leaf centroids treated as data vectors.
double csv(const ClusterTree& tree);

/// True when csv(tree) exceeds every leaf's scatter; never with one leaf.
bool csv_stop(const ClusterTree& tree);

}  // namespace textpart

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "textpart/corpus.hpp"
#include "textpart/partition.hpp"

namespace textpart {

/// sum_y p(y) log(p(y)/q(y)) with 0 log 0 = 0. Throws SupportError when p
/// puts mass where q has none.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// pi1 KL(p || m) + pi2 KL(q || m) with m = pi1 p + pi2 q.
double js_divergence(std::span<const double> p, std::span<const double> q, double pi1,
                     double pi2);

/// Information lost by merging a singleton x into cluster t:
/// (p(x) + p(t)) JS_{pi}(p(y|x), p(y|t)) with pi proportional to (p(x), p(t)).
/// Zero when p(t) = 0.
double merge_cost(double px, std::span<const double> py_given_x, double pt,
                  std::span<const double> py_given_t);

/// Sparse form of merge_cost. `cluster_mass` is the unnormalized cluster
/// distribution pt * p(y|t); only the support of x is visited.
double merge_cost(double px, const RowView& py_given_x, double pt,
                  std::span<const double> cluster_mass);

/// I(X;Y) of the joint itself.
double mutual_information(const JointDistribution& joint);

/// Hard IB partition with its cluster statistics.
struct IBPartition {
  Partition partition;
  std::vector<double> pt;                       ///< sum_{x in t} p(x)
  std::vector<std::vector<double>> py_given_t;  ///< dense, one row per cluster
  double score = 0.0;                           ///< I(T;Y)
  std::size_t loops = 0;
  bool converged = false;
};

/// Statistics of an arbitrary hard partition, computed from scratch.
IBPartition ib_statistics(const JointDistribution& joint, const Partition& partition);

/// I(T;Y) = sum_{t,y} p(t) p(y|t) log(p(y|t) / p(y)), from scratch.
double mutual_information(const Partition& partition, const JointDistribution& joint);

/// Incrementally maintained sequential-IB state over exactly K clusters.
class SibState {
 public:
  SibState(const JointDistribution& joint, Partition initial);

  /// Uniform random assignment; empty clusters each take one document from
  /// the (then) largest cluster.
  static SibState random(const JointDistribution& joint, std::size_t k, std::mt19937_64& rng);

  struct Step {
    std::size_t from = 0;
    std::size_t to = 0;
    bool skipped = false;  ///< x was a singleton and stayed put
  };

  /// Draws x out of its cluster and merges it into the cheapest cluster
  /// (the reduced origin competes; ties go to the smaller index).
  Step draw_and_merge(std::size_t x);

  /// One pass over a fresh random permutation; returns the change count.
  std::size_t sweep(std::mt19937_64& rng);

  double score() const;
  std::size_t k() const { return k_; }
  std::size_t nonempty_clusters() const;
  const HardAssignment& assignment() const { return assignment_; }

  /// Maintained statistics as an IBPartition (py_given_t materialized).
  IBPartition snapshot() const;

 private:
  std::span<double> mass(std::size_t t) {
    return std::span(mass_).subspan(t * n_terms_, n_terms_);
  }
  std::span<const double> mass(std::size_t t) const {
    return std::span(mass_).subspan(t * n_terms_, n_terms_);
  }
  void move_mass(std::size_t x, std::size_t t, double sign);

  const JointDistribution* joint_;
  std::size_t k_;
  std::size_t n_terms_;
  HardAssignment assignment_;
  std::vector<std::size_t> sizes_;
  std::vector<double> pt_;
  std::vector<double> mass_;  ///< k x |Y|, row t = sum_{x in t} p(x) p(y|x)
  std::vector<double> py_;    ///< marginal p(y)
};

struct SibOptions {
  std::size_t k = 2;
  std::size_t restarts = 10;
  std::size_t max_loops = 50;
  double eps = 0.0;
  std::uint64_t seed = 0;
};

/// Best of `restarts` sequential-IB runs from random partitions.
IBPartition sib_run(const JointDistribution& joint, const SibOptions& options);

/// One sequential-IB run starting from a given partition (refinement).
IBPartition sib_refine(const JointDistribution& joint, const Partition& initial,
                       const SibOptions& options);

}  // namespace textpart

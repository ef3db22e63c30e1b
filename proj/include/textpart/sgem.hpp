#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "textpart/linalg.hpp"
#include "textpart/partition.hpp"

namespace textpart {

inline constexpr double kSigma2Floor = 1e-12;

/// Mixture of spherical Gaussians sharing one variance.
struct SGemModel {
  std::vector<double> priors;
  std::vector<DenseVec> centroids;
  double sigma2 = 1.0;

  std::size_t k() const { return priors.size(); }
};

/// z_i = argmax_j log P(c_j) - ||d_i - m_j||^2 / (2 sigma^2); ties go to the
/// smallest j and zero-prior clusters never win.
HardAssignment e_step(const SGemModel& model, const CsrMatrix& m);

/// Re-estimates priors, centroids and the shared variance from z. Empty
/// clusters are first re-seeded (z is updated in place) with the document
/// farthest from the cluster's previous centroid; without a previous model
/// the global mean stands in.
SGemModel m_step(const CsrMatrix& m, HardAssignment& z, std::size_t k,
                 const SGemModel* previous = nullptr);

double complete_log_likelihood(const SGemModel& model, std::span<const std::size_t> z,
                               const CsrMatrix& m);

struct SGemOptions {
  std::optional<double> delta;  ///< default 1e-6 * n
  std::size_t max_iter = 100;
};

struct SGemResult {
  Partition partition;
  SGemModel model;
  std::vector<double> trace;  ///< log L_c after the initial fit and each iteration
  std::size_t iterations = 0;
  bool converged = false;
};

SGemResult sgem_run(const Partition& init, const CsrMatrix& m, const SGemOptions& options = {});

}  // namespace textpart

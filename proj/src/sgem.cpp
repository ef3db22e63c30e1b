#include "textpart/sgem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "textpart/error.hpp"
#include "textpart/parallel.hpp"

namespace textpart {

namespace {

constexpr std::size_t kChunk = 256;

void reseed_empty_clusters(const CsrMatrix& m, HardAssignment& z, std::size_t k,
                           const SGemModel* previous) {
  std::vector<std::size_t> sizes(k, 0);
  for (auto c : z) ++sizes[c];
  if (std::find(sizes.begin(), sizes.end(), 0) == sizes.end()) return;
  if (k > z.size()) throw Error("more clusters than documents");

  const bool have_previous = previous != nullptr && previous->k() == k;
  const DenseVec global_mean = have_previous ? DenseVec{} : centroid(m, all_rows(m.rows()));
  for (std::size_t j = 0; j < k; ++j) {
    if (sizes[j] != 0) continue;
    const DenseVec& ref = have_previous ? previous->centroids[j] : global_mean;
    const double ref_norm = squared_norm(ref);
    std::size_t best = z.size();
    double best_dist = -1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (sizes[z[i]] < 2) continue;
      const double d = squared_distance(m.row(i), ref, ref_norm);
      if (d > best_dist) {
        best_dist = d;
        best = i;
      }
    }
    --sizes[z[best]];
    z[best] = j;
    sizes[j] = 1;
  }
}

}  // namespace

HardAssignment e_step(const SGemModel& model, const CsrMatrix& m) {
  const std::size_t k = model.k();
  if (std::none_of(model.priors.begin(), model.priors.end(), [](double p) { return p > 0.0; })) {
    throw Error("invalid model: all priors are zero");
  }
  std::vector<double> log_prior(k), center_norm(k);
  for (std::size_t j = 0; j < k; ++j) {
    log_prior[j] = model.priors[j] > 0.0 ? std::log(model.priors[j])
                                         : -std::numeric_limits<double>::infinity();
    center_norm[j] = squared_norm(model.centroids[j]);
  }
  const double inv_two_sigma2 = 1.0 / (2.0 * std::max(model.sigma2, kSigma2Floor));

  HardAssignment z(m.rows(), 0);
  const std::size_t chunks = (m.rows() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(m.rows(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const auto row = m.row(i);
      double best = -std::numeric_limits<double>::infinity();
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (!(model.priors[j] > 0.0)) continue;
        const double score =
            log_prior[j] -
            squared_distance(row, model.centroids[j], center_norm[j]) * inv_two_sigma2;
        if (score > best) {
          best = score;
          best_j = j;
        }
      }
      z[i] = best_j;
    }
  });
  return z;
}

SGemModel m_step(const CsrMatrix& m, HardAssignment& z, std::size_t k,
                 const SGemModel* previous) {
  if (k == 0) throw Error("k must be at least 1");
  if (z.size() != m.rows()) throw Error("assignment length differs from document count");
  for (auto c : z) {
    if (c >= k) throw Error("cluster index " + std::to_string(c) + " out of range");
  }
  reseed_empty_clusters(m, z, k, previous);

  const std::size_t n = m.rows();
  SGemModel model;
  model.priors.assign(k, 0.0);
  model.centroids.assign(k, DenseVec(m.cols(), 0.0));
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++sizes[z[i]];
    axpy(1.0, m.row(i), model.centroids[z[i]]);
  }
  for (std::size_t j = 0; j < k; ++j) {
    model.priors[j] = static_cast<double>(sizes[j]) / static_cast<double>(n);
    const double inv = 1.0 / static_cast<double>(sizes[j]);
    for (auto& x : model.centroids[j]) x *= inv;
  }

  std::vector<double> center_norm(k);
  for (std::size_t j = 0; j < k; ++j) center_norm[j] = squared_norm(model.centroids[j]);
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    residual += squared_distance(m.row(i), model.centroids[z[i]], center_norm[z[i]]);
  }
  const double nd = static_cast<double>(n) * static_cast<double>(m.cols());
  model.sigma2 = std::max(residual / nd, kSigma2Floor);
  return model;
}

double complete_log_likelihood(const SGemModel& model, std::span<const std::size_t> z,
                               const CsrMatrix& m) {
  if (z.size() != m.rows()) throw Error("assignment length differs from document count");
  const double sigma2 = std::max(model.sigma2, kSigma2Floor);
  const double d = static_cast<double>(m.cols());
  const double norm_term = 0.5 * d * std::log(2.0 * std::numbers::pi * sigma2);
  std::vector<double> center_norm(model.k());
  for (std::size_t j = 0; j < model.k(); ++j) center_norm[j] = squared_norm(model.centroids[j]);

  double total = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto j = z[i];
    const double r2 = squared_distance(m.row(i), model.centroids[j], center_norm[j]);
    total += std::log(model.priors[j]) - norm_term - r2 / (2.0 * sigma2);
  }
  return total;
}

SGemResult sgem_run(const Partition& init, const CsrMatrix& m, const SGemOptions& options) {
  if (init.k < 1) throw Error("initial partition needs at least one cluster");
  if (init.assignment.size() != m.rows()) {
    throw Error("initial partition does not cover the documents");
  }
  const auto sizes = init.cluster_sizes();
  if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
    throw Error("initial partition has an empty cluster");
  }
  const double delta = options.delta.value_or(1e-6 * static_cast<double>(m.rows()));

  SGemResult result;
  HardAssignment z = init.assignment;
  SGemModel model = m_step(m, z, init.k);
  result.trace.push_back(complete_log_likelihood(model, z, m));

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    HardAssignment next = e_step(model, m);
    SGemModel next_model = m_step(m, next, init.k, &model);
    const double ll = complete_log_likelihood(next_model, next, m);
    const double gain = ll - result.trace.back();
    result.trace.push_back(ll);
    result.iterations = it;
    z = std::move(next);
    model = std::move(next_model);
    if (gain < delta) {
      result.converged = true;
      break;
    }
  }
  result.partition = {init.k, std::move(z)};
  result.model = std::move(model);
  return result;
}

}  // namespace textpart

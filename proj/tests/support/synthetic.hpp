#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "textpart/corpus.hpp"
#include "textpart/linalg.hpp"

namespace textpart::testing {

struct LabeledPoints {
  std::vector<DenseVec> points;
  std::vector<std::size_t> labels;

  CsrMatrix matrix() const { return CsrMatrix::from_dense(points); }
};

/// Isotropic Gaussian clusters around the given centers.
LabeledPoints gaussian_clusters(const std::vector<DenseVec>& centers,
                                const std::vector<std::size_t>& sizes, double sd,
                                std::uint64_t seed);

/// 1000 points in two unit-variance 2-D Gaussians whose centers are `gap`
/// standard deviations apart.
LabeledPoints two_gaussians(std::uint64_t seed, double gap = 8.0);

/// 334 points in five compact 2-D clusters; the middle-left one sits on the
/// first PDDP hyperplane.
LabeledPoints five_clusters(std::uint64_t seed);

struct LabeledCorpus {
  std::vector<TokenizedDocument> docs;
  std::vector<std::size_t> labels;
};

/// Bag-of-words documents drawn from per-topic multinomials: each topic owns
/// a block of words and shares a Zipf background.
LabeledCorpus multinomial_corpus(std::uint64_t seed, std::size_t n_docs = 2000,
                                 std::size_t n_topics = 8, std::size_t vocab = 1000,
                                 double topic_weight = 0.25);

/// Random joint with uniform p(x) and Dirichlet(1)-like conditionals; each
/// row keeps at least one and on average `density` of the terms.
JointDistribution random_joint(std::mt19937_64& rng, std::size_t n_docs, std::size_t n_terms,
                               double density = 1.0);

}  // namespace textpart::testing

#include "synthetic.hpp"

#include <cmath>
#include <string>

namespace textpart::testing {

LabeledPoints gaussian_clusters(const std::vector<DenseVec>& centers,
                                const std::vector<std::size_t>& sizes, double sd,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sd);
  LabeledPoints out;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (std::size_t i = 0; i < sizes[c]; ++i) {
      DenseVec p(centers[c]);
      for (auto& x : p) x += noise(rng);
      out.points.push_back(std::move(p));
      out.labels.push_back(c);
    }
  }
  return out;
}

LabeledPoints two_gaussians(std::uint64_t seed, double gap) {
  return gaussian_clusters({{0.0, 0.0}, {gap / std::sqrt(2.0), gap / std::sqrt(2.0)}},
                           {500, 500}, 1.0, seed);
}

LabeledPoints five_clusters(std::uint64_t seed) {
  return gaussian_clusters({{-10.0, 5.0}, {-10.0, -5.0}, {-2.0, 0.0}, {6.0, 5.0}, {6.0, -5.0}},
                           {67, 67, 66, 67, 67}, 1.0, seed);
}

namespace {

// Letters only, so the words survive a round trip through the tokenizer.
std::string word_name(std::size_t id) {
  std::string s = "w";
  do {
    s.push_back(static_cast<char>('a' + id % 26));
    id /= 26;
  } while (id != 0);
  return s;
}

}  // namespace

LabeledCorpus multinomial_corpus(std::uint64_t seed, std::size_t n_docs, std::size_t n_topics,
                                 std::size_t vocab, double topic_weight) {
  std::mt19937_64 rng(seed);
  std::vector<double> background(vocab);
  for (std::size_t w = 0; w < vocab; ++w) background[w] = 1.0 / static_cast<double>(w + 1);
  const std::size_t block = vocab / (2 * n_topics);

  std::vector<std::discrete_distribution<std::size_t>> topics;
  for (std::size_t t = 0; t < n_topics; ++t) {
    std::vector<double> weights(vocab);
    double bg_total = 0.0;
    for (auto b : background) bg_total += b;
    for (std::size_t w = 0; w < vocab; ++w) weights[w] = (1.0 - topic_weight) * background[w] / bg_total;
    // Topic blocks live in the tail of the vocabulary, away from the Zipf head.
    const std::size_t start = vocab / 2 + t * block;
    for (std::size_t w = start; w < start + block; ++w) {
      weights[w] += topic_weight / static_cast<double>(block);
    }
    topics.emplace_back(weights.begin(), weights.end());
  }

  std::uniform_int_distribution<std::size_t> length(30, 90);
  LabeledCorpus out;
  for (std::size_t d = 0; d < n_docs; ++d) {
    const std::size_t t = d % n_topics;
    TokenizedDocument doc;
    doc.id = "doc" + std::to_string(d);
    const std::size_t len = length(rng);
    for (std::size_t i = 0; i < len; ++i) doc.tokens.push_back(word_name(topics[t](rng)));
    out.docs.push_back(std::move(doc));
    out.labels.push_back(t);
  }
  return out;
}

JointDistribution random_joint(std::mt19937_64& rng, std::size_t n_docs, std::size_t n_terms,
                               double density) {
  std::exponential_distribution<double> gamma1(1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any_term(0, n_terms - 1);
  JointDistribution joint;
  joint.px.assign(n_docs, 1.0 / static_cast<double>(n_docs));
  joint.py_given_x = CsrMatrix(n_terms);
  for (std::size_t x = 0; x < n_docs; ++x) {
    std::vector<double> row(n_terms, 0.0);
    const std::size_t forced = any_term(rng);
    double total = 0.0;
    for (std::size_t y = 0; y < n_terms; ++y) {
      if (y == forced || coin(rng) < density) {
        row[y] = gamma1(rng);
        total += row[y];
      }
    }
    std::vector<std::size_t> idx;
    std::vector<double> val;
    for (std::size_t y = 0; y < n_terms; ++y) {
      if (row[y] > 0.0) {
        idx.push_back(y);
        val.push_back(row[y] / total);
      }
    }
    joint.py_given_x.append_row(idx, val);
  }
  return joint;
}

}  // namespace textpart::testing

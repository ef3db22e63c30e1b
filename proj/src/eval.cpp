#include "textpart/eval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "textpart/error.hpp"

namespace textpart {

Contingency Contingency::build(std::span<const std::size_t> clusters,
                               std::span<const std::size_t> categories) {
  if (clusters.size() != categories.size()) {
    throw Error("partition covers " + std::to_string(clusters.size()) + " documents but " +
                std::to_string(categories.size()) + " labels were given");
  }
  Contingency c;
  c.n = clusters.size();
  const std::size_t n_cat =
      categories.empty() ? 0 : *std::max_element(categories.begin(), categories.end()) + 1;
  const std::size_t n_clu =
      clusters.empty() ? 0 : *std::max_element(clusters.begin(), clusters.end()) + 1;
  c.counts.assign(n_cat, std::vector<std::size_t>(n_clu, 0));
  c.category_totals.assign(n_cat, 0);
  c.cluster_totals.assign(n_clu, 0);
  for (std::size_t i = 0; i < c.n; ++i) {
    ++c.counts[categories[i]][clusters[i]];
    ++c.category_totals[categories[i]];
    ++c.cluster_totals[clusters[i]];
  }
  return c;
}

std::vector<std::size_t> encode_labels(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(ids.try_emplace(l, ids.size()).first->second);
  return out;
}

double nmi(std::span<const std::size_t> clusters, std::span<const std::size_t> categories) {
  const auto c = Contingency::build(clusters, categories);
  if (c.n == 0) return 0.0;
  const double n = static_cast<double>(c.n);

  const auto entropy_term = [n](const std::vector<std::size_t>& totals) {
    double s = 0.0;
    for (auto t : totals) {
      if (t > 0) s += static_cast<double>(t) * std::log(static_cast<double>(t) / n);
    }
    return s;
  };
  const double h_cat = entropy_term(c.category_totals);
  const double h_clu = entropy_term(c.cluster_totals);
  if (h_cat == 0.0 || h_clu == 0.0) return 0.0;

  double num = 0.0;
  for (std::size_t h = 0; h < c.counts.size(); ++h) {
    for (std::size_t l = 0; l < c.cluster_totals.size(); ++l) {
      const auto nhl = c.counts[h][l];
      if (nhl == 0) continue;
      const double x = static_cast<double>(nhl);
      num += x * std::log(n * x / (static_cast<double>(c.category_totals[h]) *
                                   static_cast<double>(c.cluster_totals[l])));
    }
  }
  return num / std::sqrt(h_cat * h_clu);
}

double nmi(std::span<const std::size_t> clusters, std::span<const std::string> labels) {
  const auto ids = encode_labels(labels);
  return nmi(clusters, ids);
}

}  // namespace textpart

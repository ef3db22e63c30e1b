#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace textpart {

/// Category x cluster counts.
struct Contingency {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> counts;  ///< [category][cluster]
  std::vector<std::size_t> category_totals;
  std::vector<std::size_t> cluster_totals;

  static Contingency build(std::span<const std::size_t> clusters,
                           std::span<const std::size_t> categories);
};

/// Maps arbitrary labels to dense ids in order of first appearance.
std::vector<std::size_t> encode_labels(std::span<const std::string> labels);

/// Normalized mutual information in [0, 1]. Defined as 0 when either side
/// has a single group. Throws on a length mismatch.
double nmi(std::span<const std::size_t> clusters, std::span<const std::size_t> categories);
double nmi(std::span<const std::size_t> clusters, std::span<const std::string> labels);

}  // namespace textpart

#pragma once

#include <cstddef>
#include <vector>

namespace textpart {

using HardAssignment = std::vector<std::size_t>;

/// Flat assignment of every document to one of k clusters.
struct Partition {
  std::size_t k = 0;
  HardAssignment assignment;

  std::size_t size() const { return assignment.size(); }

  std::vector<std::size_t> cluster_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (auto c : assignment) ++sizes[c];
    return sizes;
  }

  std::vector<std::vector<std::size_t>> members() const {
    std::vector<std::vector<std::size_t>> out(k);
    for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(i);
    return out;
  }

  bool operator==(const Partition&) const = default;
};

}  // namespace textpart

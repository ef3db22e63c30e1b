#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "textpart/pddp.hpp"

namespace textpart {

/// One node of an exported PDDP tree.
struct TreeRecord {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::size_t depth = 0;
  std::size_t size = 0;
  double scatter = 0.0;
  bool leaf = false;
  std::vector<std::size_t> members;  ///< leaves only

  bool operator==(const TreeRecord&) const = default;
};

std::vector<TreeRecord> export_tree(const ClusterTree& tree);

/// Result of one `cluster` run.
struct RunReport {
  std::string algorithm;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, std::string>> stats;  ///< algorithm outputs
  std::uint64_t seed = 0;
  std::size_t k_found = 0;
  double seconds = 0.0;
  std::vector<std::string> warnings;
  std::optional<double> nmi;
  std::vector<TreeRecord> tree;
  std::vector<std::string> doc_ids;
  std::vector<std::size_t> assignments;

  bool operator==(const RunReport&) const = default;
};

/// Number of distinct values in the assignment list.
std::size_t distinct_clusters(const std::vector<std::size_t>& assignments);

/// Throws if the report breaks its invariants (lengths, k_found).
void validate(const RunReport& report);

void write_report(std::ostream& out, const RunReport& report);
RunReport parse_report(std::istream& in);

void save_report(const std::filesystem::path& path, const RunReport& report);
RunReport load_report(const std::filesystem::path& path);

}  // namespace textpart

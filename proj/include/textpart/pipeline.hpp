#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textpart/corpus.hpp"
#include "textpart/linalg.hpp"
#include "textpart/pddp.hpp"
#include "textpart/report.hpp"

namespace textpart {

enum class Algorithm { Pddp, PddpSgem, Sib, PddpSib };

Algorithm parse_algorithm(std::string_view name);
std::string algorithm_name(Algorithm a);
StopRule parse_stop_rule(std::string_view name);
std::string stop_rule_name(StopRule s);

struct ClusterConfig {
  Algorithm algorithm = Algorithm::Pddp;
  StopRule stop = StopRule::Fixed;
  std::optional<std::size_t> k;
  std::optional<double> delta;  ///< sGEM threshold; default 1e-6 * n
  std::size_t max_iter = 100;   ///< sGEM iteration cap
  std::size_t restarts = 10;
  std::size_t max_loops = 50;
  double eps = 0.0;
  std::uint64_t seed = 0;
  bool tfidf = true;  ///< false: use matrix values as-is for vector methods
  ScatterMode scatter = ScatterMode::MeanDistance;
  std::size_t max_k = 0;  ///< leaf cap for csv/bic; 0 = none
};

/// Throws UsageError for inconsistent settings.
void validate(const ClusterConfig& config);

/// Runs the configured pipeline on a raw-count matrix. Vector methods see the
/// tf-idf view (unless disabled); sIB sees word conditionals of the counts.
RunReport run_cluster(const TermDocMatrix& counts, const ClusterConfig& config);

struct IngestOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> stop_words;
  std::size_t min_count = 2;
};

struct IngestResult {
  TermDocMatrix counts;
  std::vector<std::string> dropped;
};

/// Reads, tokenizes and prunes a corpus; the returned counts already exclude
/// documents that tf-idf weighting would empty.
IngestResult ingest(const IngestOptions& options);

}  // namespace textpart

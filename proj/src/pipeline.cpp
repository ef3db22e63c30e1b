#include "textpart/pipeline.hpp"

#include <chrono>

#include "textpart/corpus_io.hpp"
#include "textpart/error.hpp"
#include "textpart/sgem.hpp"
#include "textpart/sib.hpp"

namespace textpart {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "pddp") return Algorithm::Pddp;
  if (name == "pddp+sgem") return Algorithm::PddpSgem;
  if (name == "sib") return Algorithm::Sib;
  if (name == "pddp+sib") return Algorithm::PddpSib;
  throw UsageError("unknown algorithm '" + std::string(name) + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Pddp: return "pddp";
    case Algorithm::PddpSgem: return "pddp+sgem";
    case Algorithm::Sib: return "sib";
    case Algorithm::PddpSib: return "pddp+sib";
  }
  return "unknown";
}

StopRule parse_stop_rule(std::string_view name) {
  if (name == "fixed") return StopRule::Fixed;
  if (name == "csv") return StopRule::Csv;
  if (name == "bic") return StopRule::Bic;
  throw UsageError("unknown stopping rule '" + std::string(name) + "'");
}

std::string stop_rule_name(StopRule s) {
  switch (s) {
    case StopRule::Fixed: return "fixed";
    case StopRule::Csv: return "csv";
    case StopRule::Bic: return "bic";
  }
  return "unknown";
}

void validate(const ClusterConfig& c) {
  if (c.stop == StopRule::Fixed) {
    if (!c.k) throw UsageError("--stop fixed requires --k");
    if (*c.k < 1) throw UsageError("--k must be at least 1");
  } else if (c.k) {
    throw UsageError("--k is only valid with --stop fixed");
  }
  if (c.delta && !(*c.delta > 0.0)) throw UsageError("--delta must be positive");
  if (c.max_iter < 1) throw UsageError("--max-iter must be at least 1");
  if (c.restarts < 1) throw UsageError("--restarts must be at least 1");
  if (c.max_loops < 1) throw UsageError("--maxl must be at least 1");
  if (!(c.eps >= 0.0 && c.eps < 1.0)) throw UsageError("--eps must lie in [0, 1)");
}

namespace {

PddpOptions pddp_options(const ClusterConfig& c) {
  PddpOptions o;
  o.stop = c.stop;
  o.k = c.k.value_or(1);
  o.scatter = c.scatter;
  o.seed = c.seed;
  o.max_leaves = c.max_k;
  return o;
}

SibOptions sib_options(const ClusterConfig& c, std::size_t k) {
  return {k, c.restarts, c.max_loops, c.eps, c.seed};
}

void record_parameters(RunReport& r, const ClusterConfig& c) {
  auto& p = r.parameters;
  p.emplace_back("stop", stop_rule_name(c.stop));
  if (c.k) p.emplace_back("k", std::to_string(*c.k));
  p.emplace_back("weighting", c.tfidf ? "tfidf" : "none");
  p.emplace_back("scatter", c.scatter == ScatterMode::MeanDistance ? "mean" : "sumsq");
  if (c.max_k != 0) p.emplace_back("max_k", std::to_string(c.max_k));
  if (c.algorithm == Algorithm::PddpSgem) {
    p.emplace_back("delta", c.delta ? format_number(*c.delta) : "auto");
    p.emplace_back("max_iter", std::to_string(c.max_iter));
  }
  if (c.algorithm == Algorithm::Sib || c.algorithm == Algorithm::PddpSib) {
    if (c.algorithm == Algorithm::Sib) p.emplace_back("restarts", std::to_string(c.restarts));
    p.emplace_back("maxl", std::to_string(c.max_loops));
    p.emplace_back("eps", format_number(c.eps));
  }
}

ClusterTree run_pddp(const CsrMatrix& vectors, const ClusterConfig& c, RunReport& report) {
  auto tree = pddp_run(vectors, pddp_options(c));
  if (tree.exhausted_early) {
    report.warnings.push_back("stopping rule not met: no splittable leaf remains");
  }
  report.tree = export_tree(tree);
  report.stats.emplace_back("pddp_leaves", std::to_string(tree.leaf_count()));
  return tree;
}

}  // namespace

RunReport run_cluster(const TermDocMatrix& counts, const ClusterConfig& config) {
  validate(config);

  TermDocMatrix count_view;
  TermDocMatrix vector_view;
  RunReport report;
  if (config.tfidf) {
    auto views = align_views(counts);
    if (!views.dropped.empty()) {
      report.warnings.push_back("dropped " + std::to_string(views.dropped.size()) +
                                " documents with no tf-idf weight");
    }
    count_view = std::move(views.counts);
    vector_view = std::move(views.weighted);
  } else {
    count_view = counts;
    vector_view = counts;
  }
  if (count_view.n_docs() < 2) throw Error("clustering needs at least two documents");

  report.algorithm = algorithm_name(config.algorithm);
  report.seed = config.seed;
  record_parameters(report, config);
  report.doc_ids = count_view.doc_ids;

  const auto& vectors = vector_view.matrix;
  const auto start = std::chrono::steady_clock::now();
  switch (config.algorithm) {
    case Algorithm::Pddp: {
      report.assignments = run_pddp(vectors, config, report).partition().assignment;
      break;
    }
    case Algorithm::PddpSgem: {
      const auto tree = run_pddp(vectors, config, report);
      SGemOptions o;
      o.delta = config.delta;
      o.max_iter = config.max_iter;
      auto result = sgem_run(tree.partition(), vectors, o);
      report.stats.emplace_back("sgem_iterations", std::to_string(result.iterations));
      report.stats.emplace_back("sgem_converged", result.converged ? "yes" : "no");
      report.stats.emplace_back("sgem_loglik", format_number(result.trace.back()));
      report.assignments = std::move(result.partition.assignment);
      break;
    }
    case Algorithm::Sib: {
      std::size_t k = 0;
      if (config.stop == StopRule::Fixed) {
        k = *config.k;
      } else {
        // The stopping rule is evaluated by a PDDP pass; sIB then runs at that k.
        k = run_pddp(vectors, config, report).leaf_count();
      }
      const auto joint = word_conditionals(count_view.matrix);
      auto result = sib_run(joint, sib_options(config, k));
      report.stats.emplace_back("sib_information", format_number(result.score));
      report.stats.emplace_back("sib_loops", std::to_string(result.loops));
      report.assignments = std::move(result.partition.assignment);
      break;
    }
    case Algorithm::PddpSib: {
      const auto tree = run_pddp(vectors, config, report);
      const auto joint = word_conditionals(count_view.matrix);
      auto result = sib_refine(joint, tree.partition(), sib_options(config, tree.leaf_count()));
      report.stats.emplace_back("sib_information", format_number(result.score));
      report.stats.emplace_back("sib_loops", std::to_string(result.loops));
      report.assignments = std::move(result.partition.assignment);
      break;
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.k_found = distinct_clusters(report.assignments);
  validate(report);
  return report;
}

IngestResult ingest(const IngestOptions& options) {
  if (options.min_count < 1) throw UsageError("--min-count must be at least 1");
  const auto stop = options.stop_words ? read_stop_words(*options.stop_words) : StopWords{};
  std::vector<TokenizedDocument> docs;
  for (auto& raw : read_corpus(options.input)) {
    docs.push_back({std::move(raw.id), tokenize(raw.text, stop)});
  }
  if (docs.empty()) throw Error("no documents found in " + options.input.string());

  auto built = build_matrix(docs, options.min_count);
  auto views = align_views(std::move(built.matrix));
  IngestResult out;
  out.counts = std::move(views.counts);
  out.dropped = std::move(built.dropped);
  out.dropped.insert(out.dropped.end(), views.dropped.begin(), views.dropped.end());
  return out;
}

}  // namespace textpart

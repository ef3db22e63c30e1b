// textpart: ingest corpora, cluster them, and score the result.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "textpart/corpus_io.hpp"
#include "textpart/error.hpp"
#include "textpart/eval.hpp"
#include "textpart/pipeline.hpp"
#include "textpart/report.hpp"

namespace fs = std::filesystem;
using namespace textpart;

namespace {

constexpr int kUsageExit = 2;

int run_ingest(const IngestOptions& options, const fs::path& output) {
  const auto result = ingest(options);
  write_matrix(output, result.counts);
  for (const auto& id : result.dropped) std::cerr << "dropped " << id << '\n';
  std::cout << "n_docs " << result.counts.n_docs() << '\n'
            << "n_terms " << result.counts.n_terms() << '\n'
            << "nnz " << result.counts.matrix.nnz() << '\n'
            << "dropped " << result.dropped.size() << '\n';
  return 0;
}

int run_cluster_command(const fs::path& matrix, const ClusterConfig& config,
                        const std::optional<fs::path>& labels, const fs::path& output) {
  validate(config);
  const auto counts = read_matrix(matrix);
  auto report = run_cluster(counts, config);
  if (labels) {
    const auto gold = read_labels(*labels);
    if (gold.size() != report.assignments.size()) {
      throw Error("labels file has " + std::to_string(gold.size()) + " entries but the run has " +
                  std::to_string(report.assignments.size()) + " documents");
    }
    report.nmi = nmi(report.assignments, gold);
  }
  save_report(output, report);
  std::cout << "algorithm " << report.algorithm << '\n'
            << "k_found " << report.k_found << '\n'
            << "seconds " << format_fixed(report.seconds, 3) << '\n';
  if (report.nmi) std::cout << "nmi " << format_fixed(*report.nmi, 4) << '\n';
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  return 0;
}

int run_eval(const fs::path& report_path, const fs::path& labels_path) {
  const auto report = load_report(report_path);
  const auto labels = read_labels(labels_path);
  if (labels.size() != report.assignments.size()) {
    throw Error("labels file has " + std::to_string(labels.size()) + " entries but the report has " +
                std::to_string(report.assignments.size()) + " assignments");
  }
  const double score = nmi(report.assignments, labels);
  {
    std::ofstream out(report_path, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot append to " + report_path.string());
    out << "nmi " << format_number(score) << '\n';
  }
  std::cout << format_fixed(score, 4) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document clustering: PDDP, spherical-Gaussian hard EM and sequential IB"};
  app.require_subcommand(1);

  IngestOptions ingest_options;
  std::string stop_words;
  fs::path ingest_output;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a term-count matrix from raw text");
  ingest_cmd->add_option("--input", ingest_options.input,
                         "Directory of .txt files or a file with one document per line")
      ->required();
  ingest_cmd->add_option("--stop-words", stop_words, "Stop-word file, one term per line");
  ingest_cmd->add_option("--min-count", ingest_options.min_count,
                         "Drop terms with a smaller corpus-total count")
      ->capture_default_str();
  ingest_cmd->add_option("--output", ingest_output, "Output prefix for .mat/.vocab/.docs")
      ->required();

  ClusterConfig config;
  fs::path matrix_prefix;
  fs::path report_output;
  std::string algo = "pddp";
  std::string stop = "fixed";
  std::size_t k = 0;
  double delta = 0.0;
  std::string weighting = "tfidf";
  std::string scatter = "mean";
  std::string cluster_labels;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a matrix and write a run report");
  cluster_cmd->add_option("--matrix", matrix_prefix, "Matrix prefix written by ingest")->required();
  cluster_cmd->add_option("--algo", algo, "pddp | pddp+sgem | sib | pddp+sib")
      ->capture_default_str();
  cluster_cmd->add_option("--stop", stop, "fixed | csv | bic")->capture_default_str();
  auto* k_opt = cluster_cmd->add_option("--k", k, "Cluster count (stop=fixed)");
  auto* delta_opt = cluster_cmd->add_option("--delta", delta, "sGEM log-likelihood threshold");
  cluster_cmd->add_option("--max-iter", config.max_iter, "sGEM iteration cap")
      ->capture_default_str();
  cluster_cmd->add_option("--restarts", config.restarts, "sIB random restarts")
      ->capture_default_str();
  cluster_cmd->add_option("--maxl", config.max_loops, "sIB loop limit")->capture_default_str();
  cluster_cmd->add_option("--eps", config.eps, "sIB change-fraction threshold")
      ->capture_default_str();
  cluster_cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  cluster_cmd->add_option("--weighting", weighting, "tfidf | none")->capture_default_str();
  cluster_cmd->add_option("--scatter", scatter, "mean | sumsq")->capture_default_str();
  cluster_cmd->add_option("--max-k", config.max_k, "Leaf cap for csv/bic (0 = none)")
      ->capture_default_str();
  cluster_cmd->add_option("--labels", cluster_labels, "Optional gold labels for NMI");
  cluster_cmd->add_option("--output", report_output, "Report file")->required();

  fs::path eval_report;
  fs::path eval_labels;
  auto* eval_cmd = app.add_subcommand("eval", "Score a run report against gold labels");
  eval_cmd->add_option("--report", eval_report, "Report written by cluster")->required();
  eval_cmd->add_option("--labels", eval_labels, "One label per document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*ingest_cmd) {
      if (!stop_words.empty()) ingest_options.stop_words = stop_words;
      return run_ingest(ingest_options, ingest_output);
    }
    if (*cluster_cmd) {
      config.algorithm = parse_algorithm(algo);
      config.stop = parse_stop_rule(stop);
      if (*k_opt) config.k = k;
      if (*delta_opt) config.delta = delta;
      if (weighting != "tfidf" && weighting != "none") {
        throw UsageError("--weighting must be tfidf or none");
      }
      config.tfidf = weighting == "tfidf";
      if (scatter == "mean") {
        config.scatter = ScatterMode::MeanDistance;
      } else if (scatter == "sumsq") {
        config.scatter = ScatterMode::SumSquared;
      } else {
        throw UsageError("--scatter must be mean or sumsq");
      }
      std::optional<fs::path> labels;
      if (!cluster_labels.empty()) labels = cluster_labels;
      return run_cluster_command(matrix_prefix, config, labels, report_output);
    }
    return run_eval(eval_report, eval_labels);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

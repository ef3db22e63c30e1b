#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "textpart/linalg.hpp"

namespace textpart {

using StopWords = std::unordered_set<std::string>;

/// Lowercases UTF-8 text and splits it on non-alphabetic code points.
/// Stop words are compared after lowercasing.
std::vector<std::string> tokenize(std::string_view raw_text, const StopWords& stop_words = {});

struct TokenizedDocument {
  std::string id;
  std::vector<std::string> tokens;
};

/// Sparse documents x terms matrix with its vocabulary and document ids.
struct TermDocMatrix {
  CsrMatrix matrix;
  std::vector<std::string> vocab;    ///< lexicographic; column j is vocab[j]
  std::vector<std::string> doc_ids;  ///< row i is doc_ids[i]

  std::size_t n_docs() const { return matrix.rows(); }
  std::size_t n_terms() const { return matrix.cols(); }

  TermDocMatrix select_docs(std::span<const std::size_t> rows) const;

  bool operator==(const TermDocMatrix&) const = default;
};

/// A transformed matrix plus the ids of documents removed along the way.
struct CorpusResult {
  TermDocMatrix matrix;
  std::vector<std::string> dropped;
};

/// Raw term counts. Terms whose corpus-total count is below min_count are
/// pruned; documents left empty are dropped. Throws "empty corpus after
/// pruning" if nothing survives.
CorpusResult build_matrix(const std::vector<TokenizedDocument>& docs, std::size_t min_count);

/// w_ik = tf_ik * log(n / df_k) followed by L2 row normalization. Terms with
/// df = n get weight 0 and are removed from rows; rows left with no weight
/// are dropped.
CorpusResult tfidf_weight(const TermDocMatrix& counts);

/// The two views the clustering families consume, over the same documents.
struct AlignedViews {
  TermDocMatrix counts;    ///< raw counts (word conditionals)
  TermDocMatrix weighted;  ///< tf-idf, L2-normalized (vector-space methods)
  std::vector<std::string> dropped;
};

/// Drops documents from the count matrix until tf-idf weighting removes no
/// further rows, so both views cover identical documents.
AlignedViews align_views(TermDocMatrix counts);

/// p(x) and p(y|x) for the hard IB methods; p(x) is uniform.
struct JointDistribution {
  std::vector<double> px;
  CsrMatrix py_given_x;

  std::size_t n_docs() const { return py_given_x.rows(); }
  std::size_t n_terms() const { return py_given_x.cols(); }
};

/// p(y|x) = n(y|x) / sum_y' n(y'|x), p(x) = 1/|X|. Throws "empty document"
/// for a row with zero total and on negative counts.
JointDistribution word_conditionals(const CsrMatrix& counts);

}  // namespace textpart

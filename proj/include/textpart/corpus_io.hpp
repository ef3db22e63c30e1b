#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "textpart/corpus.hpp"

namespace textpart {

struct RawDocument {
  std::string id;
  std::string text;
};

/// A directory yields one document per regular file ending in .txt, ordered
/// by filename (doc_id = filename). A regular file yields one document per
/// line (doc_id = 1-based line number).
std::vector<RawDocument> read_corpus(const std::filesystem::path& input);

/// One term per line; blank lines ignored; terms pass through the tokenizer's
/// lowercasing so they match tokens.
StopWords read_stop_words(const std::filesystem::path& path);

/// One label per line, in document order.
std::vector<std::string> read_labels(const std::filesystem::path& path);

/// Writes <prefix>.mat, <prefix>.vocab and <prefix>.docs.
void write_matrix(const std::filesystem::path& prefix, const TermDocMatrix& m);
TermDocMatrix read_matrix(const std::filesystem::path& prefix);

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_number(double value);
/// Fixed notation with the given number of decimals, locale independent.
std::string format_fixed(double value, int decimals);
double parse_number(std::string_view text);

}  // namespace textpart

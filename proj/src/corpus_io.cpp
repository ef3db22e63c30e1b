#include "textpart/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "textpart/error.hpp"

namespace textpart {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

fs::path with_suffix(const fs::path& prefix, std::string_view suffix) {
  return fs::path(prefix.string() + std::string(suffix));
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> read_lines(const fs::path& path) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    strip_cr(line);
    lines.push_back(std::move(line));
  }
  return lines;
}

std::size_t parse_index(std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed integer '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    const auto start = pos;
    while (pos < line.size() && line[pos] != ' ') ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

}  // namespace

std::vector<RawDocument> read_corpus(const fs::path& input) {
  std::vector<RawDocument> docs;
  if (fs::is_directory(input)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    for (const auto& f : files) {
      auto in = open_input(f);
      std::ostringstream text;
      text << in.rdbuf();
      docs.push_back({f.filename().string(), text.str()});
    }
    return docs;
  }
  if (!fs::is_regular_file(input)) throw Error("cannot read " + input.string());
  auto lines = read_lines(input);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    docs.push_back({std::to_string(i + 1), std::move(lines[i])});
  }
  return docs;
}

StopWords read_stop_words(const fs::path& path) {
  StopWords words;
  for (const auto& line : read_lines(path)) {
    for (auto& t : tokenize(line)) words.insert(std::move(t));
  }
  return words;
}

std::vector<std::string> read_labels(const fs::path& path) { return read_lines(path); }

void write_matrix(const fs::path& prefix, const TermDocMatrix& m) {
  {
    auto out = open_output(with_suffix(prefix, ".mat"));
    out << m.n_docs() << ' ' << m.n_terms() << ' ' << m.matrix.nnz() << '\n';
    for (std::size_t i = 0; i < m.n_docs(); ++i) {
      const auto r = m.matrix.row(i);
      for (std::size_t k = 0; k < r.size(); ++k) {
        out << i << ' ' << r.indices[k] << ' ' << format_number(r.values[k]) << '\n';
      }
    }
    if (!out) throw Error("write failed for " + prefix.string() + ".mat");
  }
  {
    auto out = open_output(with_suffix(prefix, ".vocab"));
    for (const auto& t : m.vocab) out << t << '\n';
  }
  {
    auto out = open_output(with_suffix(prefix, ".docs"));
    for (const auto& d : m.doc_ids) out << d << '\n';
  }
}

TermDocMatrix read_matrix(const fs::path& prefix) {
  const auto mat_path = with_suffix(prefix, ".mat");
  auto in = open_input(mat_path);
  std::string line;
  if (!std::getline(in, line)) throw Error(mat_path.string() + ": missing header");
  strip_cr(line);
  const auto header = split_spaces(line);
  if (header.size() != 3) throw Error(mat_path.string() + ": header must be 'n_docs n_terms nnz'");
  const auto n_docs = parse_index(header[0]);
  const auto n_terms = parse_index(header[1]);
  const auto nnz = parse_index(header[2]);

  std::vector<Triplet> triplets;
  triplets.reserve(nnz);
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_spaces(line);
    if (f.size() != 3) throw Error(mat_path.string() + ": malformed entry '" + line + "'");
    const auto row = parse_index(f[0]);
    if (row >= n_docs) throw Error(mat_path.string() + ": row index out of range");
    triplets.push_back({row, parse_index(f[1]), parse_number(f[2])});
  }
  if (triplets.size() != nnz) throw Error(mat_path.string() + ": entry count differs from header");

  TermDocMatrix m;
  m.matrix = CsrMatrix::from_triplets(n_docs, n_terms, std::move(triplets));
  m.vocab = read_lines(with_suffix(prefix, ".vocab"));
  m.doc_ids = read_lines(with_suffix(prefix, ".docs"));
  if (m.vocab.size() != n_terms) throw Error(prefix.string() + ".vocab: term count differs from header");
  if (m.doc_ids.size() != n_docs) throw Error(prefix.string() + ".docs: document count differs from header");
  return m;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

double parse_number(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace textpart

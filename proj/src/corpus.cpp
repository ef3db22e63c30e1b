#include "textpart/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "textpart/error.hpp"

namespace textpart {

namespace {

// Decodes one UTF-8 code point at pos, advancing pos. Malformed input yields
// U+FFFD and consumes one byte.
char32_t next_code_point(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int len = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Alphabetic ranges: Latin, Greek, Cyrillic, Armenian, Hebrew, Arabic, and
// the caseless East Asian scripts.
bool is_alpha(char32_t c) {
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x370 && c <= 0x3FF) return c >= 0x386 && c != 0x387 && c != 0x3F6;
  if (c >= 0x400 && c <= 0x481) return true;
  if (c >= 0x48A && c <= 0x52F) return true;
  if (c >= 0x531 && c <= 0x587) return c <= 0x556 || c >= 0x561;
  if (c >= 0x5D0 && c <= 0x5EA) return true;
  if (c >= 0x620 && c <= 0x64A) return true;
  if (c >= 0x1E00 && c <= 0x1FFF) return true;
  if (c >= 0x3041 && c <= 0x30FF) return c != 0x30FB;
  if (c >= 0x3400 && c <= 0x4DBF) return true;
  if (c >= 0x4E00 && c <= 0x9FFF) return true;
  if (c >= 0xAC00 && c <= 0xD7A3) return true;
  return false;
}

char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0xC0) return c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x100 && c <= 0x137) return c | 1;
  if (c >= 0x139 && c <= 0x148) return (c & 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return c | 1;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  if (c >= 0x460 && c <= 0x481) return c | 1;
  if (c >= 0x48A && c <= 0x4BF) return c | 1;
  if (c >= 0x531 && c <= 0x556) return c + 48;
  if (c >= 0x1E00 && c <= 0x1EFF) return c | 1;
  return c;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw_text, const StopWords& stop_words) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty() && !stop_words.contains(current)) tokens.push_back(current);
    current.clear();
  };
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    const char32_t cp = next_code_point(raw_text, pos);
    if (is_alpha(cp)) {
      append_utf8(current, to_lower(cp));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

TermDocMatrix TermDocMatrix::select_docs(std::span<const std::size_t> rows) const {
  TermDocMatrix out;
  out.matrix = matrix.select_rows(rows);
  out.vocab = vocab;
  out.doc_ids.reserve(rows.size());
  for (auto r : rows) out.doc_ids.push_back(doc_ids[r]);
  return out;
}

CorpusResult build_matrix(const std::vector<TokenizedDocument>& docs, std::size_t min_count) {
  if (min_count < 1) throw Error("min_count must be at least 1");

  std::map<std::string, std::size_t> totals;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) ++totals[t];
  }
  std::map<std::string_view, std::size_t> column;
  CorpusResult out;
  for (const auto& [term, count] : totals) {
    if (count >= min_count) {
      column.emplace(term, out.matrix.vocab.size());
      out.matrix.vocab.push_back(term);
    }
  }

  out.matrix.matrix = CsrMatrix(out.matrix.vocab.size());
  std::map<std::size_t, double> row;
  std::vector<std::size_t> idx;
  std::vector<double> val;
  for (const auto& d : docs) {
    row.clear();
    for (const auto& t : d.tokens) {
      if (auto it = column.find(t); it != column.end()) row[it->second] += 1.0;
    }
    if (row.empty()) {
      out.dropped.push_back(d.id);
      continue;
    }
    idx.clear();
    val.clear();
    for (const auto& [j, c] : row) {
      idx.push_back(j);
      val.push_back(c);
    }
    out.matrix.matrix.append_row(idx, val);
    out.matrix.doc_ids.push_back(d.id);
  }
  if (out.matrix.n_docs() == 0) throw Error("empty corpus after pruning");
  return out;
}

namespace {

// Weights and normalizes; kept receives the surviving row indices.
CorpusResult weight_rows(const TermDocMatrix& counts, std::vector<std::size_t>& kept) {
  const auto& m = counts.matrix;
  const std::size_t n = m.rows();
  if (n == 0) throw Error("tf-idf weighting needs at least one document");

  std::vector<std::size_t> df(m.cols(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = m.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r.values[k] != 0.0) ++df[r.indices[k]];
    }
  }
  std::vector<double> idf(m.cols(), 0.0);
  for (std::size_t j = 0; j < idf.size(); ++j) {
    if (df[j] > 0) idf[j] = std::log(static_cast<double>(n) / static_cast<double>(df[j]));
  }

  CorpusResult out;
  out.matrix.vocab = counts.vocab;
  out.matrix.matrix = CsrMatrix(m.cols());
  std::vector<std::size_t> idx;
  std::vector<double> val;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = m.row(i);
    idx.clear();
    val.clear();
    double norm2 = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double w = r.values[k] * idf[r.indices[k]];
      if (w != 0.0) {
        idx.push_back(r.indices[k]);
        val.push_back(w);
        norm2 += w * w;
      }
    }
    if (idx.empty()) {
      out.dropped.push_back(counts.doc_ids[i]);
      continue;
    }
    const double norm = std::sqrt(norm2);
    for (auto& w : val) w /= norm;
    out.matrix.matrix.append_row(idx, val);
    out.matrix.doc_ids.push_back(counts.doc_ids[i]);
    kept.push_back(i);
  }
  return out;
}

}  // namespace

CorpusResult tfidf_weight(const TermDocMatrix& counts) {
  std::vector<std::size_t> kept;
  return weight_rows(counts, kept);
}

AlignedViews align_views(TermDocMatrix counts) {
  AlignedViews views;
  for (;;) {
    std::vector<std::size_t> keep;
    auto weighted = weight_rows(counts, keep);
    if (weighted.dropped.empty()) {
      views.counts = std::move(counts);
      views.weighted = std::move(weighted.matrix);
      return views;
    }
    views.dropped.insert(views.dropped.end(), weighted.dropped.begin(), weighted.dropped.end());
    if (keep.empty()) throw Error("empty corpus after pruning");
    counts = counts.select_docs(keep);
  }
}

JointDistribution word_conditionals(const CsrMatrix& counts) {
  JointDistribution joint;
  const std::size_t n = counts.rows();
  joint.px.assign(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  joint.py_given_x = CsrMatrix(counts.cols());
  std::vector<std::size_t> idx;
  std::vector<double> val;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = counts.row(i);
    double total = 0.0;
    for (auto v : r.values) {
      if (v < 0.0) throw Error("negative count in row " + std::to_string(i));
      total += v;
    }
    if (!(total > 0.0)) throw Error("empty document");
    idx.clear();
    val.clear();
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r.values[k] > 0.0) {
        idx.push_back(r.indices[k]);
        val.push_back(r.values[k] / total);
      }
    }
    joint.py_given_x.append_row(idx, val);
  }
  return joint;
}

}  // namespace textpart

#include "textpart/report.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <system_error>

#include "textpart/corpus_io.hpp"
#include "textpart/error.hpp"

namespace textpart {

namespace {

constexpr std::string_view kMagic = "textpart-report 1";

std::uint64_t to_integer(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("malformed integer '" + s + "'");
  }
  return v;
}

std::size_t to_index(const std::string& s) { return static_cast<std::size_t>(to_integer(s)); }

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

std::vector<TreeRecord> export_tree(const ClusterTree& tree) {
  std::vector<TreeRecord> out;
  for (const auto& n : tree.nodes()) {
    TreeRecord r;
    r.id = n.id;
    r.parent = n.parent;
    r.depth = n.depth;
    r.size = n.members.size();
    r.scatter = n.scatter;
    r.leaf = n.is_leaf();
    if (r.leaf) r.members = n.members;
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t distinct_clusters(const std::vector<std::size_t>& assignments) {
  return std::set<std::size_t>(assignments.begin(), assignments.end()).size();
}

void validate(const RunReport& r) {
  if (r.doc_ids.size() != r.assignments.size()) {
    throw Error("report has " + std::to_string(r.doc_ids.size()) + " doc ids but " +
                std::to_string(r.assignments.size()) + " assignments");
  }
  if (r.k_found != distinct_clusters(r.assignments)) {
    throw Error("report k_found differs from the number of distinct clusters");
  }
}

// Line-oriented; every line starts with a keyword. Doc ids run to the last
// space of an assignment line, so they may contain spaces.
void write_report(std::ostream& out, const RunReport& r) {
  validate(r);
  out << kMagic << '\n';
  out << "algorithm " << r.algorithm << '\n';
  for (const auto& [key, value] : r.parameters) out << "param " << key << ' ' << value << '\n';
  out << "seed " << r.seed << '\n';
  out << "n_docs " << r.assignments.size() << '\n';
  out << "k_found " << r.k_found << '\n';
  out << "seconds " << format_number(r.seconds) << '\n';
  for (const auto& [key, value] : r.stats) out << "stat " << key << ' ' << value << '\n';
  for (const auto& w : r.warnings) out << "warning " << w << '\n';
  for (const auto& n : r.tree) {
    out << "node " << n.id << ' ';
    if (n.parent) {
      out << *n.parent;
    } else {
      out << '-';
    }
    out << ' ' << n.depth << ' ' << n.size << ' ' << format_number(n.scatter);
    if (n.leaf) {
      out << " leaf";
      for (auto m : n.members) out << ' ' << m;
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < r.assignments.size(); ++i) {
    out << "assignment " << r.doc_ids[i] << ' ' << r.assignments[i] << '\n';
  }
  if (r.nmi) out << "nmi " << format_number(*r.nmi) << '\n';
}

RunReport parse_report(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw Error("not a textpart report");
  RunReport r;
  std::optional<std::size_t> n_docs;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto space = line.find(' ');
    const std::string key = line.substr(0, space);
    const std::string rest = space == std::string::npos ? "" : line.substr(space + 1);
    if (key == "algorithm") {
      r.algorithm = rest;
    } else if (key == "param") {
      const auto s = rest.find(' ');
      if (s == std::string::npos) throw Error("malformed param line");
      r.parameters.emplace_back(rest.substr(0, s), rest.substr(s + 1));
    } else if (key == "stat") {
      const auto s = rest.find(' ');
      if (s == std::string::npos) throw Error("malformed stat line");
      r.stats.emplace_back(rest.substr(0, s), rest.substr(s + 1));
    } else if (key == "seed") {
      r.seed = to_integer(rest);
    } else if (key == "n_docs") {
      n_docs = to_index(rest);
    } else if (key == "k_found") {
      r.k_found = to_index(rest);
    } else if (key == "seconds") {
      r.seconds = parse_number(rest);
    } else if (key == "warning") {
      r.warnings.push_back(rest);
    } else if (key == "nmi") {
      r.nmi = parse_number(rest);
    } else if (key == "node") {
      const auto f = words(rest);
      if (f.size() < 5) throw Error("malformed node line");
      TreeRecord n;
      n.id = to_index(f[0]);
      if (f[1] != "-") n.parent = to_index(f[1]);
      n.depth = to_index(f[2]);
      n.size = to_index(f[3]);
      n.scatter = parse_number(f[4]);
      if (f.size() > 5) {
        if (f[5] != "leaf") throw Error("malformed node line");
        n.leaf = true;
        for (std::size_t i = 6; i < f.size(); ++i) n.members.push_back(to_index(f[i]));
      }
      r.tree.push_back(std::move(n));
    } else if (key == "assignment") {
      const auto s = rest.rfind(' ');
      if (s == std::string::npos) throw Error("malformed assignment line");
      r.doc_ids.push_back(rest.substr(0, s));
      r.assignments.push_back(to_index(rest.substr(s + 1)));
    } else {
      throw Error("unknown report field '" + key + "'");
    }
  }
  if (n_docs && *n_docs != r.assignments.size()) {
    throw Error("report n_docs differs from the number of assignment lines");
  }
  validate(r);
  return r;
}

void save_report(const std::filesystem::path& path, const RunReport& report) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_report(out, report);
  if (!out) throw Error("write failed for " + path.string());
}

RunReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return parse_report(in);
}

}  // namespace textpart

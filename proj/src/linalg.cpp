#include "textpart/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "textpart/error.hpp"

namespace textpart {

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m(cols);
  m.offsets_.reserve(rows + 1);
  m.indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t next = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (; next < triplets.size() && triplets[next].row == r; ++next) {
      const auto& t = triplets[next];
      if (t.col >= cols) {
        throw Error("column index " + std::to_string(t.col) + " out of range");
      }
      if (!m.indices_.empty() && m.offsets_.back() < m.indices_.size() &&
          m.indices_.back() == t.col) {
        throw Error("duplicate entry (" + std::to_string(t.row) + ", " +
                    std::to_string(t.col) + ")");
      }
      m.indices_.push_back(t.col);
      m.values_.push_back(t.value);
    }
    m.offsets_.push_back(m.indices_.size());
  }
  if (next != triplets.size()) {
    throw Error("row index " + std::to_string(triplets[next].row) + " out of range");
  }
  return m;
}

CsrMatrix CsrMatrix::from_dense(const std::vector<DenseVec>& points) {
  CsrMatrix m(points.empty() ? 0 : points.front().size());
  std::vector<std::size_t> idx;
  std::vector<double> val;
  for (const auto& p : points) {
    if (p.size() != m.cols_) throw Error("ragged dense input");
    idx.clear();
    val.clear();
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] != 0.0) {
        idx.push_back(j);
        val.push_back(p[j]);
      }
    }
    m.append_row(idx, val);
  }
  return m;
}

void CsrMatrix::append_row(std::span<const std::size_t> indices,
                           std::span<const double> values) {
  if (indices.size() != values.size()) throw Error("row index/value length mismatch");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= cols_ || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error("row indices must be strictly increasing and in range");
    }
  }
  indices_.insert(indices_.end(), indices.begin(), indices.end());
  values_.insert(values_.end(), values.begin(), values.end());
  offsets_.push_back(indices_.size());
}

CsrMatrix CsrMatrix::select_rows(std::span<const std::size_t> rows) const {
  CsrMatrix out(cols_);
  for (auto r : rows) {
    const auto v = row(r);
    out.append_row(v.indices, v.values);
  }
  return out;
}

DenseVec CsrMatrix::dense_row(std::size_t i) const {
  DenseVec out(cols_, 0.0);
  const auto v = row(i);
  for (std::size_t k = 0; k < v.size(); ++k) out[v.indices[k]] = v.values[k];
  return out;
}

double dot(const RowView& row, const DenseVec& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) s += row.values[k] * v[row.indices[k]];
  return s;
}

double dot(const DenseVec& a, const DenseVec& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double squared_norm(const DenseVec& v) { return dot(v, v); }

double squared_distance(const RowView& row, const DenseVec& center,
                        double center_squared_norm) {
  // Coordinates outside the row contribute center_j^2; correct the others.
  double s = center_squared_norm;
  for (std::size_t k = 0; k < row.size(); ++k) {
    const double c = center[row.indices[k]];
    const double diff = row.values[k] - c;
    s += diff * diff - c * c;
  }
  return std::max(s, 0.0);
}

void axpy(double scale, const RowView& row, DenseVec& out) {
  for (std::size_t k = 0; k < row.size(); ++k) out[row.indices[k]] += scale * row.values[k];
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

DenseVec centroid(const CsrMatrix& m, std::span<const std::size_t> members) {
  if (members.empty()) throw Error("centroid of an empty set");
  DenseVec c(m.cols(), 0.0);
  for (auto i : members) axpy(1.0, m.row(i), c);
  const double inv = 1.0 / static_cast<double>(members.size());
  for (auto& x : c) x *= inv;
  return c;
}

double scatter_value(const CsrMatrix& m, std::span<const std::size_t> members,
                     const DenseVec& center, ScatterMode mode) {
  if (members.empty()) throw Error("scatter of an empty cluster");
  if (center.size() != m.cols()) throw Error("centroid dimension mismatch");
  const double cn = squared_norm(center);
  double total = 0.0;
  for (auto i : members) {
    const double d2 = squared_distance(m.row(i), center, cn);
    total += mode == ScatterMode::MeanDistance ? std::sqrt(d2) : d2;
  }
  return mode == ScatterMode::MeanDistance ? total / static_cast<double>(members.size())
                                           : total;
}

ClusterStats cluster_stats(const CsrMatrix& m, std::vector<std::size_t> members,
                           ScatterMode mode) {
  ClusterStats s;
  s.centroid = centroid(m, members);
  s.scatter = scatter_value(m, members, s.centroid, mode);
  s.members = std::move(members);
  return s;
}

namespace {

bool all_rows_identical(const CsrMatrix& m, std::span<const std::size_t> members) {
  const auto first = m.row(members.front());
  for (auto i : members.subspan(1)) {
    const auto r = m.row(i);
    if (!std::equal(r.indices.begin(), r.indices.end(), first.indices.begin(),
                    first.indices.end()) ||
        !std::equal(r.values.begin(), r.values.end(), first.values.begin(),
                    first.values.end())) {
      return false;
    }
  }
  return true;
}

// out = C v with C = (1/n) sum d_i d_i^T - w w^T
void apply_covariance(const CsrMatrix& m, std::span<const std::size_t> members,
                      const DenseVec& mean, const DenseVec& v, DenseVec& out) {
  std::fill(out.begin(), out.end(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(members.size());
  for (auto i : members) {
    const auto r = m.row(i);
    axpy(dot(r, v) * inv_n, r, out);
  }
  const double wv = dot(mean, v);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= wv * mean[j];
}

double normalize(DenseVec& v) {
  const double norm = std::sqrt(squared_norm(v));
  if (norm > 0.0) {
    for (auto& x : v) x /= norm;
  }
  return norm;
}

}  // namespace

PrincipalDirection principal_direction(const CsrMatrix& m,
                                       std::span<const std::size_t> members,
                                       std::uint64_t seed,
                                       const PowerIterationOptions& options) {
  if (members.size() < 2) throw Error("principal direction needs at least two rows");
  if (all_rows_identical(m, members)) throw DegenerateClusterError();

  const auto mean = centroid(m, members);
  const double total_variance =
      scatter_value(m, members, mean, ScatterMode::SumSquared) /
      static_cast<double>(members.size());
  if (!(total_variance > 0.0)) throw DegenerateClusterError();

  const std::size_t dim = m.cols();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  DenseVec v(dim), next(dim);

  // A start vector (numerically) orthogonal to the dominant eigenspace maps
  // to ~0 under C; redraw in that case.
  constexpr int kMaxDraws = 16;
  for (int draw = 0;; ++draw) {
    for (auto& x : v) x = uniform(rng);
    normalize(v);
    apply_covariance(m, members, mean, v, next);
    if (std::sqrt(squared_norm(next)) > 1e-14 * total_variance) break;
    if (draw + 1 == kMaxDraws) throw DegenerateClusterError();
  }

  PrincipalDirection out;
  for (int it = 1; it <= options.max_iterations; ++it) {
    if (it > 1) apply_covariance(m, members, mean, v, next);
    if (normalize(next) == 0.0) throw DegenerateClusterError();
    const double change = 1.0 - std::abs(dot(next, v));
    std::swap(v, next);
    out.iterations = it;
    if (change < options.tolerance) {
      out.converged = true;
      break;
    }
  }

  const auto lead = std::find_if(v.begin(), v.end(),
                                 [](double x) { return std::abs(x) > 1e-12; });
  if (lead != v.end() && *lead < 0.0) {
    for (auto& x : v) x = -x;
  }
  apply_covariance(m, members, mean, v, next);
  out.eigenvalue = dot(v, next);
  out.direction = std::move(v);
  return out;
}

}  // namespace textpart

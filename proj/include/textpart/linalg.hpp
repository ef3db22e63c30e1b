#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace textpart {

using DenseVec = std::vector<double>;

/// Read-only view of one sparse row; column indices are strictly increasing.
struct RowView {
  std::span<const std::size_t> indices;
  std::span<const double> values;

  std::size_t size() const { return indices.size(); }
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Rows are documents, columns are terms.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  explicit CsrMatrix(std::size_t cols) : cols_(cols) {}

  /// Builds from unordered triplets. Throws if an index is out of range or a
  /// (row, col) pair repeats. Explicit zeros are kept.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> triplets);

  /// Dense points become sparse rows; exact zeros are omitted.
  static CsrMatrix from_dense(const std::vector<DenseVec>& points);

  /// Appends a row. Indices must be strictly increasing and < cols().
  void append_row(std::span<const std::size_t> indices,
                  std::span<const double> values);

  std::size_t rows() const { return offsets_.size() - 1; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return indices_.size(); }

  RowView row(std::size_t i) const {
    const auto begin = offsets_[i];
    const auto len = offsets_[i + 1] - begin;
    return {std::span(indices_).subspan(begin, len),
            std::span(values_).subspan(begin, len)};
  }

  CsrMatrix select_rows(std::span<const std::size_t> rows) const;

  DenseVec dense_row(std::size_t i) const;

  bool operator==(const CsrMatrix&) const = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> indices_;
  std::vector<double> values_;
};

double dot(const RowView& row, const DenseVec& v);
double dot(const DenseVec& a, const DenseVec& b);
double squared_norm(const DenseVec& v);

/// ||row - center||^2 given the precomputed ||center||^2; O(nnz(row)).
double squared_distance(const RowView& row, const DenseVec& center,
                        double center_squared_norm);

/// out += scale * row
void axpy(double scale, const RowView& row, DenseVec& out);

std::vector<std::size_t> all_rows(std::size_t n);

/// Coordinate-wise mean of the selected rows. Throws on an empty selection.
DenseVec centroid(const CsrMatrix& m, std::span<const std::size_t> members);

enum class ScatterMode {
  MeanDistance,  ///< (1/|C|) sum ||d_i - w||
  SumSquared,    ///< sum ||d_i - w||^2
};

double scatter_value(const CsrMatrix& m, std::span<const std::size_t> members,
                     const DenseVec& center,
                     ScatterMode mode = ScatterMode::MeanDistance);

struct ClusterStats {
  std::vector<std::size_t> members;
  DenseVec centroid;
  double scatter = 0.0;
};

ClusterStats cluster_stats(const CsrMatrix& m, std::vector<std::size_t> members,
                           ScatterMode mode = ScatterMode::MeanDistance);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
};

struct PrincipalDirection {
  DenseVec direction;  ///< unit norm, first nonzero coordinate positive
  double eigenvalue = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Leading eigenvector of the covariance of the selected rows, computed
/// matrix-free by power iteration on v -> (1/n) M^T M v - w (w^T v).
/// Throws DegenerateClusterError when all rows are identical.
PrincipalDirection principal_direction(const CsrMatrix& m,
                                       std::span<const std::size_t> members,
                                       std::uint64_t seed,
                                       const PowerIterationOptions& options = {});

}  // namespace textpart

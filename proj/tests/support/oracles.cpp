#include "oracles.hpp"

#include <cmath>

namespace textpart::testing {

Eigen::MatrixXd dense_covariance(const CsrMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  const auto d = static_cast<Eigen::Index>(m.cols());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = m.dense_row(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = row[static_cast<std::size_t>(j)];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(n);
}

EigenPair leading_eigenpair(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  const auto& values = solver.eigenvalues();  // ascending
  const auto last = values.size() - 1;
  EigenPair out;
  out.vector = solver.eigenvectors().col(last);
  out.value = values(last);
  out.gap = last > 0 ? values(last) - values(last - 1) : values(last);
  return out;
}

double dense_information(const JointDistribution& joint, const std::vector<std::size_t>& assignment,
                         std::size_t k) {
  const std::size_t ny = joint.n_terms();
  std::vector<std::vector<double>> pty(k, std::vector<double>(ny, 0.0));
  std::vector<double> py(ny, 0.0);
  std::vector<double> pt(k, 0.0);
  for (std::size_t x = 0; x < joint.n_docs(); ++x) {
    const auto row = joint.py_given_x.dense_row(x);
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = joint.px[x] * row[y];
      pty[assignment[x]][y] += pxy;
      py[y] += pxy;
      pt[assignment[x]] += pxy;
    }
  }
  double info = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (pty[t][y] > 0.0) info += pty[t][y] * std::log(pty[t][y] / (pt[t] * py[y]));
    }
  }
  return info;
}

BruteForceResult best_bipartition(const JointDistribution& joint) {
  const std::size_t n = joint.n_docs();
  BruteForceResult out;
  out.best = -1.0;
  std::vector<std::size_t> z(n, 0);
  // Document 0 is pinned to side 0 so each bipartition is visited once.
  for (std::size_t mask = 1; mask < (std::size_t{1} << (n - 1)); ++mask) {
    for (std::size_t x = 1; x < n; ++x) z[x] = (mask >> (x - 1)) & 1U;
    const double info = dense_information(joint, z, 2);
    if (info > out.best) {
      out.best = info;
      out.assignment = z;
    }
  }
  return out;
}

}  // namespace textpart::testing

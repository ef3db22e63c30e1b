#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "synthetic.hpp"
#include "textpart/error.hpp"
#include "textpart/eval.hpp"
#include "textpart/pddp.hpp"
#include "textpart/sgem.hpp"

using namespace textpart;

TEST_CASE("e_step examples") {
  SGemModel model{{0.5, 0.5}, {{0.0, 0.0}, {10.0, 0.0}}, 1.0};
  CHECK(e_step(model, CsrMatrix::from_dense({{1.0, 0.0}})) == HardAssignment{0});
  CHECK(e_step(model, CsrMatrix::from_dense({{5.0, 0.0}})) == HardAssignment{0});

  // Scores log 0.9 - 3.125 and log 0.1 - 1.125.
  CHECK(std::log(0.9) - 3.125 == doctest::Approx(-3.2303605156578263).epsilon(1e-14));
  CHECK(std::log(0.1) - 1.125 == doctest::Approx(-3.4275850929940455).epsilon(1e-14));
  SGemModel skewed{{0.9, 0.1}, {{0.0}, {4.0}}, 1.0};
  CHECK(e_step(skewed, CsrMatrix::from_dense({{2.5}})) == HardAssignment{0});
  // Same geometry with equal priors picks the nearer centroid.
  SGemModel even{{0.5, 0.5}, {{0.0}, {4.0}}, 1.0};
  CHECK(e_step(even, CsrMatrix::from_dense({{2.5}})) == HardAssignment{1});
}

TEST_CASE("e_step excludes zero-prior clusters and rejects all-zero priors") {
  SGemModel model{{0.0, 1.0}, {{1.0}, {50.0}}, 1.0};
  CHECK(e_step(model, CsrMatrix::from_dense({{1.0}})) == HardAssignment{1});
  SGemModel dead{{0.0, 0.0}, {{1.0}, {2.0}}, 1.0};
  CHECK_THROWS_AS(e_step(dead, CsrMatrix::from_dense({{1.0}})), Error);
}

TEST_CASE("m_step examples") {
  auto m = CsrMatrix::from_dense({{0.0}, {2.0}});
  HardAssignment z{0, 0};
  auto model = m_step(m, z, 1);
  CHECK(model.priors == std::vector<double>{1.0});
  CHECK(model.centroids[0] == DenseVec{1.0});
  CHECK(model.sigma2 == doctest::Approx(1.0));

  auto m4 = CsrMatrix::from_dense({{0.0}, {1.0}, {2.0}, {9.0}});
  HardAssignment z4{0, 0, 0, 1};
  auto m4model = m_step(m4, z4, 2);
  CHECK(m4model.priors == std::vector<double>{0.75, 0.25});
  CHECK(m4model.centroids[0] == DenseVec{1.0});

  HardAssignment bad{0, 2};
  CHECK_THROWS_AS(m_step(m, bad, 2), Error);
}

TEST_CASE("m_step repairs empty clusters with the farthest document") {
  auto m = CsrMatrix::from_dense({{0.0}, {1.0}, {2.0}, {20.0}});
  HardAssignment z{0, 0, 0, 0};
  auto model = m_step(m, z, 2);
  CHECK(z == HardAssignment{0, 0, 0, 1});
  CHECK(model.priors == std::vector<double>{0.75, 0.25});

  SGemModel previous{{0.5, 0.5}, {{1.0}, {-5.0}}, 1.0};
  HardAssignment z2{0, 0, 0, 0};
  m_step(m, z2, 2, &previous);
  // Farthest from the old centroid -5 is 20.
  CHECK(z2 == HardAssignment{0, 0, 0, 1});
}

TEST_CASE("m_step invariants: priors sum to one, sigma2 floored") {
  auto m = CsrMatrix::from_dense({{1.0, 1.0}, {1.0, 1.0}, {3.0, 0.0}});
  HardAssignment z{0, 0, 1};
  auto model = m_step(m, z, 2);
  CHECK(model.sigma2 == kSigma2Floor);
  CHECK(std::accumulate(model.priors.begin(), model.priors.end(), 0.0) == 1.0);
  CHECK(std::isfinite(complete_log_likelihood(model, z, m)));
}

TEST_CASE("complete log likelihood examples") {
  auto m = CsrMatrix::from_dense({{3.0}});
  SGemModel model{{1.0}, {{3.0}}, 1.0 / (2.0 * std::numbers::pi)};
  CHECK(std::abs(complete_log_likelihood(model, HardAssignment{0}, m)) < 1e-12);

  auto near = CsrMatrix::from_dense({{1.0}, {-1.0}});
  auto far = CsrMatrix::from_dense({{2.0}, {-2.0}});
  SGemModel unit{{1.0}, {{0.0}}, 1.0};
  HardAssignment z{0, 0};
  CHECK(complete_log_likelihood(unit, z, far) < complete_log_likelihood(unit, z, near));
  // Prior 1 contributes nothing: value is -log(2 pi)/2 - r^2/2 per doc.
  const double expect = 2.0 * (-0.5 * std::log(2.0 * std::numbers::pi) - 0.5);
  CHECK(complete_log_likelihood(unit, z, near) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("sgem_run at a fixed point and with k = 1") {
  const auto data = testing::two_gaussians(2, 12.0);
  const auto m = data.matrix();
  auto r = sgem_run({2, data.labels}, m);
  CHECK(r.iterations == 1);
  CHECK(r.converged);
  CHECK(r.partition.assignment == data.labels);

  auto one = sgem_run({1, HardAssignment(m.rows(), 0)}, m);
  CHECK(one.iterations == 1);
  CHECK(one.converged);
  CHECK(one.partition.k == 1);

  CHECK_THROWS_AS(sgem_run({3, data.labels}, m), Error);
}

TEST_CASE("sgem trace is non-decreasing and refines PDDP on the five-cluster layout") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto data = testing::five_clusters(seed);
    const auto m = data.matrix();
    const auto leaves = pddp_run(m, {StopRule::Fixed, 5, ScatterMode::MeanDistance, seed});
    const auto r = sgem_run(leaves.partition(), m);
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1] - 1e-9);
    CHECK(r.converged);
    CHECK(r.model.sigma2 >= kSigma2Floor);
  }
}

TEST_CASE("e_step of m_step is idempotent at convergence") {
  const auto data = testing::five_clusters(9);
  const auto m = data.matrix();
  const auto leaves = pddp_run(m, {StopRule::Fixed, 5});
  const auto r = sgem_run(leaves.partition(), m, {1e-300, 100});
  REQUIRE(r.converged);
  auto z = r.partition.assignment;
  auto once = e_step(m_step(m, z, 5), m);
  auto twice = e_step(m_step(m, once, 5), m);
  CHECK(once == twice);
}

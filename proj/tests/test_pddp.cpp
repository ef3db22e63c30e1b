#include <algorithm>
#include <set>

#include "doctest.h"
#include "synthetic.hpp"
#include "textpart/error.hpp"
#include "textpart/eval.hpp"
#include "textpart/pddp.hpp"

using namespace textpart;

namespace {

std::vector<std::size_t> values_of(const CsrMatrix& m, const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> out;
  for (auto i : rows) out.push_back(static_cast<std::size_t>(m.dense_row(i)[0]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("split_cluster on a 1-D line") {
  auto m = CsrMatrix::from_dense({{1.0}, {2.0}, {3.0}, {10.0}, {11.0}, {12.0}});
  auto s = split_cluster(m, all_rows(6), 0);
  CHECK(values_of(m, s.left) == std::vector<std::size_t>{1, 2, 3});
  CHECK(values_of(m, s.right) == std::vector<std::size_t>{10, 11, 12});
  CHECK(s.direction == DenseVec{1.0});
}

TEST_CASE("split_cluster separates two distinct points and rejects duplicates") {
  auto m = CsrMatrix::from_dense({{0.0, 1.0}, {4.0, -2.0}});
  auto s = split_cluster(m, all_rows(2), 1);
  CHECK(s.left.size() == 1);
  CHECK(s.right.size() == 1);

  auto dup = CsrMatrix::from_dense({{3.0, 3.0}, {3.0, 3.0}, {3.0, 3.0}});
  CHECK_THROWS_AS(split_cluster(dup, all_rows(3), 0), DegenerateClusterError);
}

TEST_CASE("split_cluster sides match two well-separated Gaussians") {
  const auto data = testing::two_gaussians(1);
  const auto m = data.matrix();
  const auto s = split_cluster(m, all_rows(m.rows()), 0);
  std::vector<std::size_t> z(m.rows(), 0);
  for (auto i : s.right) z[i] = 1;
  CHECK(nmi(z, data.labels) >= 0.95);
}

TEST_CASE("select_leaf") {
  // Root only.
  auto m = CsrMatrix::from_dense({{0.0}, {1.0}, {10.0}, {14.0}});
  ClusterTree root(m, ScatterMode::MeanDistance);
  CHECK(select_leaf(root) == 0);

  // Leaf 1 = {0,1} scatter 0.5; leaf 2 = {10,14} scatter 2.
  ClusterTree tree(m, ScatterMode::MeanDistance);
  tree.split(m, 0, {0, 1}, {2, 3}, {1.0});
  CHECK(tree.node(1).scatter == doctest::Approx(0.5));
  CHECK(tree.node(2).scatter == doctest::Approx(2.0));
  CHECK(select_leaf(tree) == 2);
  tree.mark_final(2);
  CHECK(select_leaf(tree) == 1);
  tree.mark_final(1);
  CHECK_THROWS_AS(select_leaf(tree), ExhaustedError);

  // Equal scatters: smaller id wins.
  auto sym = CsrMatrix::from_dense({{0.0}, {2.0}, {10.0}, {12.0}});
  ClusterTree tie(sym, ScatterMode::MeanDistance);
  tie.split(sym, 0, {0, 1}, {2, 3}, {1.0});
  CHECK(select_leaf(tie) == 1);

  // Singleton leaves are not candidates.
  auto three = CsrMatrix::from_dense({{0.0}, {100.0}, {101.0}});
  ClusterTree lone(three, ScatterMode::MeanDistance);
  lone.split(three, 0, {0}, {1, 2}, {1.0});
  CHECK(select_leaf(lone) == 2);
}

TEST_CASE("pddp fixed k structure") {
  const auto data = testing::five_clusters(3);
  const auto m = data.matrix();
  auto t1 = pddp_run(m, {StopRule::Fixed, 1});
  CHECK(t1.nodes().size() == 1);
  CHECK(t1.leaf_count() == 1);
  CHECK(t1.partition().assignment == std::vector<std::size_t>(m.rows(), 0));

  auto t4 = pddp_run(m, {StopRule::Fixed, 4});
  CHECK(t4.leaf_count() == 4);
  CHECK(t4.nodes().size() == 7);
  std::size_t internal = 0;
  for (const auto& n : t4.nodes()) internal += n.is_leaf() ? 0 : 1;
  CHECK(internal == 3);
  CHECK_FALSE(t4.exhausted_early);

  CHECK_THROWS_AS(pddp_run(CsrMatrix::from_dense({{1.0}}), {}), Error);
}

TEST_CASE("pddp invariants: leaf count, partition function, replayed selection order") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto data = testing::five_clusters(seed);
    const auto m = data.matrix();
    const auto tree = pddp_run(m, {StopRule::Fixed, 8, ScatterMode::MeanDistance, seed});
    CHECK(tree.leaf_count() == tree.split_order().size() + 1);

    std::vector<int> seen(m.rows(), 0);
    for (auto leaf : tree.leaves()) {
      for (auto i : tree.node(leaf).members) ++seen[i];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));

    // Replay: at each step the split node had the max scatter among the
    // leaves that existed then.
    std::set<std::size_t> live{0};
    for (auto id : tree.split_order()) {
      const auto& chosen = tree.node(id);
      CHECK(chosen.scatter >= 0.0);
      for (auto other : live) {
        const auto& o = tree.node(other);
        if (o.members.size() < 2) continue;
        CHECK(chosen.scatter >= o.scatter);
        if (o.scatter == chosen.scatter) CHECK(id <= other);
      }
      live.erase(id);
      live.insert(*chosen.left);
      live.insert(*chosen.right);
    }
  }
}

TEST_CASE("pddp marks identical-row leaves final and flags exhaustion") {
  auto m = CsrMatrix::from_dense({{0.0}, {0.0}, {0.0}, {5.0}, {5.0}});
  auto tree = pddp_run(m, {StopRule::Fixed, 4});
  CHECK(tree.leaf_count() == 2);
  CHECK(tree.exhausted_early);
  for (auto leaf : tree.leaves()) CHECK(tree.node(leaf).final);
}

TEST_CASE("five-cluster layout: first split cuts a compact cluster") {
  const auto data = testing::five_clusters(0);
  const auto m = data.matrix();
  const auto tree = pddp_run(m, {StopRule::Fixed, 2});
  const auto p = tree.partition();
  // Some generator cluster is divided between the two halves.
  bool straddled = false;
  for (std::size_t c = 0; c < 5; ++c) {
    std::set<std::size_t> sides;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (data.labels[i] == c) sides.insert(p.assignment[i]);
    }
    straddled = straddled || sides.size() == 2;
  }
  CHECK(straddled);
  CHECK(nmi(p.assignment, data.labels) < 0.6);
}

TEST_CASE("pddp is deterministic per seed") {
  const auto data = testing::two_gaussians(4);
  const auto m = data.matrix();
  const auto a = pddp_run(m, {StopRule::Fixed, 6, ScatterMode::MeanDistance, 11});
  const auto b = pddp_run(m, {StopRule::Fixed, 6, ScatterMode::MeanDistance, 11});
  CHECK(a.partition() == b.partition());
  CHECK(a.split_order() == b.split_order());
}

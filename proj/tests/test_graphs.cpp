#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <set>

#include "graphtest/graphs.hpp"
#include "graphtest/rng.hpp"
#include "oracles.hpp"

using namespace graphtest;

namespace {

SquareMatrix from_weights(std::size_t n, std::initializer_list<std::tuple<int, int, double>> ws) {
  SquareMatrix dm(n);
  for (auto [i, j, w] : ws) {
    dm(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = w;
    dm(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = w;
  }
  return dm;
}

std::set<VertexPair> edge_set(const std::vector<VertexPair>& es) {
  std::set<VertexPair> s;
  for (auto [a, b] : es) s.emplace(std::min(a, b), std::max(a, b));
  return s;
}

}  // namespace

TEST_CASE("knn_digraph: equidistant points break ties toward the smaller index") {
  SquareMatrix dm = from_weights(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  const KnnDigraph g = knn_digraph(dm, 1);
  REQUIRE(g.edges.size() == 3);
  CHECK(g.edges[0] == VertexPair{0, 1});
  CHECK(g.edges[1] == VertexPair{1, 0});
  CHECK(g.edges[2] == VertexPair{2, 0});
}

TEST_CASE("knn_digraph: d=1 points {0, 1, 10} with k=1") {
  SquareMatrix dm = from_weights(3, {{0, 1, 1.0}, {0, 2, 10.0}, {1, 2, 9.0}});
  const KnnDigraph g = knn_digraph(dm, 1);
  CHECK(g.edges[0] == VertexPair{0, 1});
  CHECK(g.edges[1] == VertexPair{1, 0});
  CHECK(g.edges[2] == VertexPair{2, 1});
}

TEST_CASE("knn_digraph: k = N-1 saturates the digraph") {
  RngStream rng = RngStream::from(31, 0);
  const SquareMatrix dm = oracle::random_dissimilarity(6, rng);
  const KnnDigraph g = knn_digraph(dm, 5);
  CHECK(g.edges.size() == 30);
  for (std::size_t i = 0; i < 6; ++i) {
    std::set<std::uint32_t> targets;
    for (auto [a, b] : g.edges) {
      if (a == i) targets.insert(b);
    }
    CHECK(targets.size() == 5);
    CHECK(targets.count(static_cast<std::uint32_t>(i)) == 0);
  }
}

TEST_CASE("knn_digraph: k out of range") {
  RngStream rng = RngStream::from(32, 0);
  const SquareMatrix dm = oracle::random_dissimilarity(5, rng);
  CHECK_THROWS_AS(knn_digraph(dm, 0), std::invalid_argument);
  CHECK_THROWS_AS(knn_digraph(dm, 5), std::invalid_argument);
}

TEST_CASE("knn_digraph: invariant under strictly increasing transforms") {
  RngStream rng = RngStream::from(33, 0);
  const SquareMatrix dm = oracle::random_dissimilarity(10, rng);
  SquareMatrix squared(10), scaled(10);
  for (std::size_t i = 0; i < dm.v.size(); ++i) {
    squared.v[i] = dm.v[i] * dm.v[i];
    scaled.v[i] = 2.0 * dm.v[i];
  }
  const KnnDigraph g = knn_digraph(dm, 3);
  CHECK(knn_digraph(squared, 3).edges == g.edges);
  CHECK(knn_digraph(scaled, 3).edges == g.edges);
}

TEST_CASE("mst: three-vertex hand example") {
  SquareMatrix dm = from_weights(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  const Mst t = mst(dm);
  CHECK(edge_set(t.edges) == std::set<VertexPair>{{0, 1}, {1, 2}});
  CHECK(t.total_weight == doctest::Approx(3.0));
}

TEST_CASE("mst: equal weights resolve to the lexicographically first tree") {
  SquareMatrix dm = from_weights(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const Mst t = mst(dm);
  CHECK(edge_set(t.edges) == std::set<VertexPair>{{0, 1}, {0, 2}});
}

TEST_CASE("mst: weight matches enumeration over all spanning trees, N <= 6") {
  RngStream rng = RngStream::from(34, 0);
  for (std::size_t n = 3; n <= 6; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const SquareMatrix dm = oracle::random_dissimilarity(n, rng);
      const Mst t = mst(dm);
      CHECK(t.edges.size() == n - 1);
      CHECK(t.total_weight ==
            doctest::Approx(oracle::min_spanning_tree_weight(dm)).epsilon(1e-12));
    }
  }
}

TEST_CASE("shp: d=1 points {0, 1, 3} gives the sorted path") {
  SquareMatrix dm = from_weights(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  const HamPath p = shp(dm, ShpMode::exact);
  CHECK(p.order == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(p.total_weight == doctest::Approx(3.0));
}

TEST_CASE("shp: N=2 is the single edge") {
  SquareMatrix dm = from_weights(2, {{0, 1, 0.7}});
  for (ShpMode mode : {ShpMode::exact, ShpMode::two_opt, ShpMode::automatic}) {
    const HamPath p = shp(dm, mode);
    CHECK(p.order.size() == 2);
    CHECK(p.total_weight == doctest::Approx(0.7));
  }
}

TEST_CASE("shp: exact matches path enumeration, N <= 8") {
  RngStream rng = RngStream::from(35, 0);
  for (std::size_t n = 3; n <= 8; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const SquareMatrix dm = oracle::random_dissimilarity(n, rng);
      const HamPath p = shp(dm, ShpMode::exact);
      CHECK(p.total_weight ==
            doctest::Approx(oracle::min_hamiltonian_path_weight(dm)).epsilon(1e-12));
      double w = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) w += dm(p.order[i], p.order[i + 1]);
      CHECK(p.total_weight == doctest::Approx(w).epsilon(1e-12));
    }
  }
}

TEST_CASE("shp: two_opt stays within 5% of exact, N <= 10") {
  RngStream rng = RngStream::from(36, 0);
  for (std::size_t n : {6, 8, 10}) {
    for (int rep = 0; rep < 15; ++rep) {
      const SquareMatrix dm = oracle::random_dissimilarity(n, rng);
      const HamPath approx = shp(dm, ShpMode::two_opt);
      const HamPath exact = shp(dm, ShpMode::exact);
      CHECK(approx.total_weight <= 1.05 * exact.total_weight + 1e-12);
      CHECK(approx.total_weight >= exact.total_weight - 1e-12);
    }
  }
}

TEST_CASE("shp: exact mode refuses N > 12") {
  RngStream rng = RngStream::from(37, 0);
  const SquareMatrix dm = oracle::random_dissimilarity(13, rng);
  CHECK_THROWS_AS(shp(dm, ShpMode::exact), std::invalid_argument);
  CHECK_NOTHROW(shp(dm, ShpMode::automatic));
}

TEST_CASE("min_weight_matching: four-vertex hand example") {
  SquareMatrix dm = from_weights(
      4, {{0, 1, 1.0}, {2, 3, 1.0}, {0, 2, 10.0}, {0, 3, 10.0}, {1, 2, 10.0}, {1, 3, 10.0}});
  const Matching m = min_weight_matching(dm);
  CHECK(m.pairs == std::vector<VertexPair>{{0, 1}, {2, 3}});
  CHECK(m.total_weight == doctest::Approx(2.0));
  CHECK(!m.dropped.has_value());
}

TEST_CASE("min_weight_matching: N=2") {
  SquareMatrix dm = from_weights(2, {{0, 1, 0.4}});
  const Matching m = min_weight_matching(dm);
  CHECK(m.pairs == std::vector<VertexPair>{{0, 1}});
}

TEST_CASE("min_weight_matching: equals brute force for random matrices, N <= 10") {
  RngStream rng = RngStream::from(38, 0);
  for (std::size_t n = 2; n <= 10; ++n) {
    for (int rep = 0; rep < 30; ++rep) {
      const SquareMatrix dm = oracle::random_dissimilarity(n, rng);
      const Matching m = min_weight_matching(dm);
      CHECK(m.pairs.size() == n / 2);
      CHECK(m.dropped.has_value() == (n % 2 == 1));
      const double best = oracle::min_matching_weight_with_drop(dm);
      CHECK(m.total_weight == doctest::Approx(best).epsilon(1e-9));
      // disjointness
      std::set<std::uint32_t> seen;
      for (auto [a, b] : m.pairs) {
        CHECK(seen.insert(a).second);
        CHECK(seen.insert(b).second);
      }
      if (m.dropped) CHECK(seen.count(*m.dropped) == 0);
    }
  }
}

TEST_CASE("min_weight_matching: structured ties (all weights equal)") {
  for (std::size_t n : {4, 6, 7, 8}) {
    SquareMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) dm(i, j) = 1.0;
      }
    }
    const Matching m = min_weight_matching(dm);
    CHECK(m.pairs.size() == n / 2);
    CHECK(m.total_weight == doctest::Approx(static_cast<double>(n / 2)));
  }
}

TEST_CASE("graph constructions are invariant under positive scaling") {
  RngStream rng = RngStream::from(39, 0);
  const SquareMatrix dm = oracle::random_dissimilarity(9, rng);
  SquareMatrix scaled(9);
  for (std::size_t i = 0; i < dm.v.size(); ++i) scaled.v[i] = 2.0 * dm.v[i];

  CHECK(knn_digraph(scaled, 3).edges == knn_digraph(dm, 3).edges);
  CHECK(edge_set(mst(scaled).edges) == edge_set(mst(dm).edges));
  CHECK(shp(scaled, ShpMode::exact).order == shp(dm, ShpMode::exact).order);
  const Matching a = min_weight_matching(dm);
  const Matching b = min_weight_matching(scaled);
  CHECK(a.pairs == b.pairs);
  CHECK(a.dropped == b.dropped);
}

TEST_CASE("graph constructions are deterministic across calls") {
  RngStream rng = RngStream::from(40, 0);
  const SquareMatrix dm = oracle::random_dissimilarity(12, rng);
  CHECK(knn_digraph(dm, 4).edges == knn_digraph(dm, 4).edges);
  CHECK(mst(dm).edges == mst(dm).edges);
  CHECK(shp(dm).order == shp(dm).order);
  CHECK(min_weight_matching(dm).pairs == min_weight_matching(dm).pairs);
}

TEST_CASE("undirected_knn deduplicates reciprocal edges") {
  SquareMatrix dm = from_weights(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}});
  const UndirectedGraph g = undirected_knn(knn_digraph(dm, 1));
  // 0 -> 1, 1 -> 0, 2 -> 0 gives undirected {0,1}, {0,2}
  CHECK(g.edges == std::vector<VertexPair>{{0, 1}, {0, 2}});
}

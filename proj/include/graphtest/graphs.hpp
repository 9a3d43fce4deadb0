#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "graphtest/matrix.hpp"

namespace graphtest {

using VertexPair = std::pair<std::uint32_t, std::uint32_t>;

// Directed k-nearest-neighbor graph: edge (i -> j) iff j is among the k
// nearest of i. Exactly n*k edges, listed by source then neighbor rank.
struct KnnDigraph {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<VertexPair> edges;
};

// Simple undirected graph as a deduplicated edge list (each pair stored
// (min, max), sorted lexicographically).
struct UndirectedGraph {
  std::size_t n = 0;
  std::vector<VertexPair> edges;
};

struct Mst {
  std::vector<VertexPair> edges;  // N-1 pairs, (min, max), Kruskal acceptance order
  double total_weight = 0.0;
};

enum class ShpMode { automatic, exact, two_opt };

struct HamPath {
  std::vector<std::uint32_t> order;  // canonical: order.front() <= order.back()
  double total_weight = 0.0;
  ShpMode method = ShpMode::two_opt;  // exact or two_opt after resolution
};

struct Matching {
  std::vector<VertexPair> pairs;        // floor(N/2) disjoint pairs, (min, max), sorted
  std::optional<std::uint32_t> dropped; // present iff N odd
  double total_weight = 0.0;
};

// Largest N for which the exact Held-Karp SHP solver is permitted.
inline constexpr std::size_t kShpExactLimit = 12;

// Ties everywhere are broken toward the smaller vertex index.
KnnDigraph knn_digraph(const SquareMatrix& dm, std::size_t k);

// Undirected k-NN graph: (u,v) present iff u -> v or v -> u.
UndirectedGraph undirected_knn(const KnnDigraph& g);

UndirectedGraph as_undirected(const std::vector<VertexPair>& edges, std::size_t n);

// Kruskal with edges ordered by (weight, min index, max index).
Mst mst(const SquareMatrix& dm);

// Shortest Hamiltonian path with free endpoints. exact = Held-Karp subset
// DP (N <= kShpExactLimit); two_opt = best of greedy nearest-neighbor
// constructions from every start, improved by first-improvement 2-opt with
// a 50*N^2 move-evaluation budget and ascending (i, j) scan order;
// automatic picks exact iff N <= kShpExactLimit.
HamPath shp(const SquareMatrix& dm, ShpMode mode = ShpMode::automatic);

// Exact minimum-weight perfect matching (blossom). Odd N is handled with a
// phantom vertex at zero distance to everything; the phantom's partner is
// reported as `dropped` and its pair excluded.
Matching min_weight_matching(const SquareMatrix& dm);

namespace detail {
// Exact minimum-cost perfect matching on the complete graph with symmetric
// cost matrix (even size); returns mate[i] = j. Edmonds' blossom algorithm,
// primal-dual with explicit reduced costs.
std::vector<int> min_cost_perfect_matching(const SquareMatrix& cost);
}  // namespace detail

}  // namespace graphtest

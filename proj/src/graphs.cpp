#include "graphtest/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace graphtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep the smaller root
    parent[b] = a;
    return true;
  }
};

double path_weight(const SquareMatrix& dm, const std::vector<std::uint32_t>& order) {
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) w += dm(order[i], order[i + 1]);
  return w;
}

void canonicalize_path(std::vector<std::uint32_t>& order) {
  if (!order.empty() && order.front() > order.back()) {
    std::reverse(order.begin(), order.end());
  }
}

// Held-Karp over subsets with free endpoints.
HamPath shp_exact(const SquareMatrix& dm) {
  const std::size_t n = dm.n;
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<double> dp((full + 1) * n, kInf);
  std::vector<std::int16_t> prev((full + 1) * n, -1);
  for (std::size_t j = 0; j < n; ++j) dp[(std::size_t{1} << j) * n + j] = 0.0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double cur = dp[mask * n + j];
      if (cur == kInf) continue;
      for (std::size_t t = 0; t < n; ++t) {
        if (mask & (std::size_t{1} << t)) continue;
        const std::size_t nmask = mask | (std::size_t{1} << t);
        const double cand = cur + dm(j, t);
        if (cand < dp[nmask * n + t]) {
          dp[nmask * n + t] = cand;
          prev[nmask * n + t] = static_cast<std::int16_t>(j);
        }
      }
    }
  }
  std::size_t best_end = 0;
  double best = kInf;
  for (std::size_t j = 0; j < n; ++j) {
    if (dp[full * n + j] < best) {
      best = dp[full * n + j];
      best_end = j;
    }
  }
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::size_t mask = full;
  std::int32_t j = static_cast<std::int32_t>(best_end);
  while (j >= 0) {
    order.push_back(static_cast<std::uint32_t>(j));
    const std::int32_t p = prev[mask * n + static_cast<std::size_t>(j)];
    mask &= ~(std::size_t{1} << j);
    j = p;
  }
  std::reverse(order.begin(), order.end());
  canonicalize_path(order);
  return HamPath{std::move(order), best, ShpMode::exact};
}

std::vector<std::uint32_t> greedy_path(const SquareMatrix& dm, std::uint32_t start) {
  const std::size_t n = dm.n;
  std::vector<char> used(n, 0);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  order.push_back(start);
  used[start] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    const std::uint32_t cur = order.back();
    double best = kInf;
    std::uint32_t pick = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double w = dm(cur, j);
      if (w < best) {
        best = w;
        pick = j;
      }
    }
    order.push_back(pick);
    used[pick] = 1;
  }
  return order;
}

HamPath shp_two_opt(const SquareMatrix& dm) {
  const std::size_t n = dm.n;
  std::vector<std::uint32_t> order = greedy_path(dm, 0);
  double best_w = path_weight(dm, order);
  for (std::uint32_t s = 1; s < n; ++s) {
    auto cand = greedy_path(dm, s);
    const double w = path_weight(dm, cand);
    if (w < best_w) {
      best_w = w;
      order = std::move(cand);
    }
  }

  // First-improvement 2-opt on the open path; reversing [i..j] only touches
  // the two boundary edges (none at the free ends).
  const std::size_t budget = 50 * n * n;
  std::size_t evals = 0;
  bool improved = true;
  while (improved && evals < budget) {
    improved = false;
    for (std::size_t i = 0; i + 1 < n && evals < budget; ++i) {
      for (std::size_t j = i + 1; j < n && evals < budget; ++j) {
        if (i == 0 && j == n - 1) continue;  // full reversal is a no-op
        ++evals;
        double delta = 0.0;
        if (i > 0) delta += dm(order[i - 1], order[j]) - dm(order[i - 1], order[i]);
        if (j < n - 1) delta += dm(order[i], order[j + 1]) - dm(order[j], order[j + 1]);
        if (delta < -1e-12) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                       order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          improved = true;
        }
      }
    }
  }
  double total = path_weight(dm, order);
  canonicalize_path(order);
  return HamPath{std::move(order), total, ShpMode::two_opt};
}

}  // namespace

KnnDigraph knn_digraph(const SquareMatrix& dm, std::size_t k) {
  require_valid_dissimilarity(dm);
  const std::size_t n = dm.n;
  if (k < 1 || k > n - 1) throw std::invalid_argument("knn_digraph: k must be in [1, N-1]");
  KnnDigraph g;
  g.n = n;
  g.k = k;
  g.edges.resize(n * k);
  std::vector<std::pair<double, std::uint32_t>> cand(n - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cand[c++] = {dm(i, j), j};
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    for (std::size_t r = 0; r < k; ++r) g.edges[i * k + r] = {i, cand[r].second};
  }
  return g;
}

UndirectedGraph undirected_knn(const KnnDigraph& g) {
  std::vector<VertexPair> es;
  es.reserve(g.edges.size());
  for (auto [i, j] : g.edges) es.emplace_back(std::min(i, j), std::max(i, j));
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return UndirectedGraph{g.n, std::move(es)};
}

UndirectedGraph as_undirected(const std::vector<VertexPair>& edges, std::size_t n) {
  std::vector<VertexPair> es;
  es.reserve(edges.size());
  for (auto [i, j] : edges) es.emplace_back(std::min(i, j), std::max(i, j));
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return UndirectedGraph{n, std::move(es)};
}

Mst mst(const SquareMatrix& dm) {
  require_valid_dissimilarity(dm);
  const std::size_t n = dm.n;
  if (n < 2) throw std::invalid_argument("mst: N >= 2 required");
  struct E {
    double w;
    std::uint32_t a, b;
  };
  std::vector<E> es;
  es.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) es.push_back({dm(i, j), i, j});
  }
  std::sort(es.begin(), es.end(), [](const E& x, const E& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  Mst out;
  out.edges.reserve(n - 1);
  UnionFind uf(n);
  for (const E& e : es) {
    if (uf.unite(e.a, e.b)) {
      out.edges.emplace_back(e.a, e.b);
      out.total_weight += e.w;
      if (out.edges.size() == n - 1) break;
    }
  }
  return out;
}

HamPath shp(const SquareMatrix& dm, ShpMode mode) {
  require_valid_dissimilarity(dm);
  const std::size_t n = dm.n;
  if (n < 2) throw std::invalid_argument("shp: N >= 2 required");
  if (mode == ShpMode::automatic) {
    mode = (n <= kShpExactLimit) ? ShpMode::exact : ShpMode::two_opt;
  }
  if (mode == ShpMode::exact) {
    if (n > kShpExactLimit) throw std::invalid_argument("shp: exact mode limited to N <= 12");
    return shp_exact(dm);
  }
  return shp_two_opt(dm);
}

Matching min_weight_matching(const SquareMatrix& dm) {
  require_valid_dissimilarity(dm);
  const std::size_t n = dm.n;
  if (n < 2) throw std::invalid_argument("min_weight_matching: N >= 2 required");
  const bool odd = (n % 2) != 0;
  const std::size_t ne = odd ? n + 1 : n;

  // Phantom vertex (odd N) at distance 0 from everything; the optimizer
  // then picks the cheapest vertex to leave unpaired.
  SquareMatrix w(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < ne; ++j) {
      if (i == j) continue;
      w(i, j) = (i < n && j < n) ? dm(i, j) : 0.0;
    }
  }
  const std::vector<int> mate = detail::min_cost_perfect_matching(w);
  Matching out;
  for (std::size_t i = 0; i < ne; ++i) {
    if (mate[i] < 0 || static_cast<std::size_t>(mate[i]) < i) continue;
    const std::size_t j = static_cast<std::size_t>(mate[i]);
    if (j >= n) {
      out.dropped = static_cast<std::uint32_t>(i);
      continue;
    }
    out.pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    out.total_weight += dm(i, j);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  if (out.pairs.size() != n / 2) {
    throw std::logic_error("min_weight_matching: matching is not perfect");
  }
  return out;
}

}  // namespace graphtest

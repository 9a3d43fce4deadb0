#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "graphtest/graphs.hpp"

namespace graphtest {

// Binary labeling of the pooled sample: label 1 for sample 1 (m entries),
// label 2 for sample 2 (n entries). Both counts must be >= 1.
struct LabelVector {
  std::vector<std::uint8_t> labels;
  std::size_t m = 0;
  std::size_t n = 0;

  std::size_t size() const { return labels.size(); }

  static LabelVector from_labels(std::vector<std::uint8_t> ls);
  // m ones followed by n twos.
  static LabelVector canonical(std::size_t m, std::size_t n);
};

enum class StatName { nn, mst_run, shp_run, nbp, cf_nn, cf_mst };
enum class Side { reject_large, reject_small };

std::string_view to_string(StatName s);

struct StatValue {
  StatName name;
  double value = 0.0;
  Side side = Side::reject_large;
};

// Fraction of directed k-NN edges joining same-label endpoints.
StatValue t_nn(const KnnDigraph& g, const LabelVector& lab);

// Run count 1 + #cross-label edges over a tree or path edge list
// (exactly N-1 edges); `which` must be mst_run or shp_run.
StatValue t_runs(std::span<const VertexPair> edges, const LabelVector& lab, StatName which);

// Cross-match count over a minimum-weight matching; a dropped vertex's
// label is ignored.
StatValue t_nbp(const Matching& match, const LabelVector& lab);

// Exact permutation-null moments of S = (S_xx, S_yy) for a fixed simple
// graph under uniformly random labelings with fixed (m, n). The integer
// edge-pair counts are exposed so tests can check the moments by exact
// integer identities.
struct CfMoments {
  double mu_x = 0.0, mu_y = 0.0;
  double var_x = 0.0, var_y = 0.0, cov_xy = 0.0;
  std::int64_t edge_count = 0;
  std::int64_t ordered_sharing_one = 0;  // ordered pairs of distinct edges sharing a vertex
  std::int64_t ordered_disjoint = 0;     // ordered pairs of vertex-disjoint edges
  std::size_t n_vertices = 0;
};

CfMoments cf_moments(const UndirectedGraph& g, std::size_t m, std::size_t n);

// (S - mu)^T Sigma^{-1} (S - mu); throws std::runtime_error when Sigma is
// singular (with a diagnostic naming the graph counts).
double cf_quadform(double sxx, double syy, const CfMoments& mom);

// Chen-Friedman statistic on an undirected graph (k-NN graph or MST);
// `which` must be cf_nn or cf_mst. Requires N >= 4.
StatValue t_cf(const UndirectedGraph& g, const LabelVector& lab, StatName which);

}  // namespace graphtest

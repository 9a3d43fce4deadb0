#include "graphtest/stats.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace graphtest {

std::string_view to_string(StatName s) {
  switch (s) {
    case StatName::nn: return "NN";
    case StatName::mst_run: return "MST_RUN";
    case StatName::shp_run: return "SHP_RUN";
    case StatName::nbp: return "NBP";
    case StatName::cf_nn: return "CF_NN";
    case StatName::cf_mst: return "CF_MST";
  }
  return "?";
}

LabelVector LabelVector::from_labels(std::vector<std::uint8_t> ls) {
  LabelVector out;
  out.labels = std::move(ls);
  for (std::uint8_t l : out.labels) {
    if (l == 1) {
      ++out.m;
    } else if (l == 2) {
      ++out.n;
    } else {
      throw std::invalid_argument("labels must be 1 or 2");
    }
  }
  if (out.m < 1 || out.n < 1) {
    throw std::invalid_argument("label vector must contain both labels");
  }
  return out;
}

LabelVector LabelVector::canonical(std::size_t m, std::size_t n) {
  std::vector<std::uint8_t> ls(m + n, 1);
  for (std::size_t i = m; i < m + n; ++i) ls[i] = 2;
  return from_labels(std::move(ls));
}

StatValue t_nn(const KnnDigraph& g, const LabelVector& lab) {
  if (g.n != lab.size()) throw std::invalid_argument("t_nn: size mismatch");
  std::size_t same = 0;
  for (auto [i, j] : g.edges) same += (lab.labels[i] == lab.labels[j]);
  const double value = static_cast<double>(same) / static_cast<double>(g.edges.size());
  return StatValue{StatName::nn, value, Side::reject_large};
}

StatValue t_runs(std::span<const VertexPair> edges, const LabelVector& lab, StatName which) {
  if (which != StatName::mst_run && which != StatName::shp_run) {
    throw std::invalid_argument("t_runs: statistic must be mst_run or shp_run");
  }
  if (edges.size() + 1 != lab.size()) {
    throw std::invalid_argument("t_runs: expected exactly N-1 edges");
  }
  std::size_t cross = 0;
  for (auto [i, j] : edges) cross += (lab.labels[i] != lab.labels[j]);
  return StatValue{which, 1.0 + static_cast<double>(cross), Side::reject_small};
}

StatValue t_nbp(const Matching& match, const LabelVector& lab) {
  std::size_t cross = 0;
  for (auto [i, j] : match.pairs) {
    if (i >= lab.size() || j >= lab.size()) throw std::invalid_argument("t_nbp: size mismatch");
    cross += (lab.labels[i] != lab.labels[j]);
  }
  return StatValue{StatName::nbp, static_cast<double>(cross), Side::reject_small};
}

CfMoments cf_moments(const UndirectedGraph& g, std::size_t m, std::size_t n) {
  const std::size_t N = m + n;
  if (g.n != N) throw std::invalid_argument("cf_moments: size mismatch");
  if (N < 4) throw std::invalid_argument("cf_moments: N >= 4 required");

  std::vector<std::int64_t> degree(N, 0);
  for (auto [i, j] : g.edges) {
    ++degree[i];
    ++degree[j];
  }
  const std::int64_t E = static_cast<std::int64_t>(g.edges.size());
  std::int64_t share1 = 0;  // ordered pairs of distinct edges with a common vertex
  for (std::int64_t d : degree) share1 += d * (d - 1);
  const std::int64_t disjoint = E * E - E - share1;

  const double Nd = static_cast<double>(N);
  auto p2 = [&](double a) { return a * (a - 1) / (Nd * (Nd - 1)); };
  auto p3 = [&](double a) { return a * (a - 1) * (a - 2) / (Nd * (Nd - 1) * (Nd - 2)); };
  auto p4 = [&](double a) {
    return a * (a - 1) * (a - 2) * (a - 3) / (Nd * (Nd - 1) * (Nd - 2) * (Nd - 3));
  };

  CfMoments mom;
  mom.edge_count = E;
  mom.ordered_sharing_one = share1;
  mom.ordered_disjoint = disjoint;
  mom.n_vertices = N;
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double Ed = static_cast<double>(E);
  const double s1 = static_cast<double>(share1);
  const double s0 = static_cast<double>(disjoint);
  mom.mu_x = Ed * p2(md);
  mom.mu_y = Ed * p2(nd);
  const double exx = Ed * p2(md) + s1 * p3(md) + s0 * p4(md);
  const double eyy = Ed * p2(nd) + s1 * p3(nd) + s0 * p4(nd);
  const double exy =
      s0 * (md * (md - 1) * nd * (nd - 1)) / (Nd * (Nd - 1) * (Nd - 2) * (Nd - 3));
  mom.var_x = exx - mom.mu_x * mom.mu_x;
  mom.var_y = eyy - mom.mu_y * mom.mu_y;
  mom.cov_xy = exy - mom.mu_x * mom.mu_y;
  return mom;
}

double cf_quadform(double sxx, double syy, const CfMoments& mom) {
  const double det = mom.var_x * mom.var_y - mom.cov_xy * mom.cov_xy;
  const double scale = std::max({std::fabs(mom.var_x * mom.var_y),
                                 std::fabs(mom.cov_xy * mom.cov_xy), 1e-300});
  if (!(det > 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "cf statistic: singular covariance of (S_xx, S_yy); edges=" << mom.edge_count
        << " shared-vertex pairs=" << mom.ordered_sharing_one
        << " disjoint pairs=" << mom.ordered_disjoint << " N=" << mom.n_vertices;
    throw std::runtime_error(msg.str());
  }
  const double dx = sxx - mom.mu_x;
  const double dy = syy - mom.mu_y;
  return (dx * (mom.var_y * dx - mom.cov_xy * dy) + dy * (mom.var_x * dy - mom.cov_xy * dx)) /
         det;
}

StatValue t_cf(const UndirectedGraph& g, const LabelVector& lab, StatName which) {
  if (which != StatName::cf_nn && which != StatName::cf_mst) {
    throw std::invalid_argument("t_cf: statistic must be cf_nn or cf_mst");
  }
  if (g.n != lab.size()) throw std::invalid_argument("t_cf: size mismatch");
  const CfMoments mom = cf_moments(g, lab.m, lab.n);
  std::int64_t sxx = 0, syy = 0;
  for (auto [i, j] : g.edges) {
    if (lab.labels[i] == 1 && lab.labels[j] == 1) ++sxx;
    if (lab.labels[i] == 2 && lab.labels[j] == 2) ++syy;
  }
  const double value = cf_quadform(static_cast<double>(sxx), static_cast<double>(syy), mom);
  return StatValue{which, value, Side::reject_large};
}

}  // namespace graphtest

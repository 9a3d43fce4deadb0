#include "graphtest/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "graphtest/parallel.hpp"
#include "graphtest/rng.hpp"

namespace graphtest {

void PermutationPlan::validate() const {
  if (B < 1) throw std::invalid_argument("permutation plan: B >= 1 required");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("permutation plan: alpha in (0,1)");
}

std::string_view to_string(TestKind t) {
  switch (t) {
    case TestKind::nn: return "nn";
    case TestKind::mst_run: return "mst";
    case TestKind::shp_run: return "shp";
    case TestKind::nbp: return "nbp";
    case TestKind::cf_nn: return "cf-nn";
    case TestKind::cf_mst: return "cf-mst";
  }
  return "?";
}

std::optional<TestKind> test_kind_from_string(std::string_view s) {
  if (s == "nn") return TestKind::nn;
  if (s == "mst") return TestKind::mst_run;
  if (s == "shp") return TestKind::shp_run;
  if (s == "nbp") return TestKind::nbp;
  if (s == "cf-nn") return TestKind::cf_nn;
  if (s == "cf-mst") return TestKind::cf_mst;
  return std::nullopt;
}

TestArtifact build_artifact(const SquareMatrix& dm, const TestOptions& opt,
                            std::size_t m, std::size_t n) {
  if (dm.n != m + n) throw std::invalid_argument("build_artifact: matrix/label size mismatch");
  TestArtifact art;
  art.kind = opt.kind;
  art.n = dm.n;
  switch (opt.kind) {
    case TestKind::nn:
      art.knn = knn_digraph(dm, opt.k);
      break;
    case TestKind::mst_run:
      art.tree_edges = mst(dm).edges;
      break;
    case TestKind::shp_run: {
      const HamPath path = shp(dm, opt.shp_mode);
      art.tree_edges.reserve(path.order.size() - 1);
      for (std::size_t i = 0; i + 1 < path.order.size(); ++i) {
        art.tree_edges.emplace_back(path.order[i], path.order[i + 1]);
      }
      break;
    }
    case TestKind::nbp:
      art.match = min_weight_matching(dm);
      break;
    case TestKind::cf_nn:
      art.ugraph = undirected_knn(knn_digraph(dm, opt.k));
      art.moments = cf_moments(art.ugraph, m, n);
      cf_quadform(art.moments.mu_x, art.moments.mu_y, art.moments);  // fail early if singular
      break;
    case TestKind::cf_mst:
      art.ugraph = as_undirected(mst(dm).edges, dm.n);
      art.moments = cf_moments(art.ugraph, m, n);
      cf_quadform(art.moments.mu_x, art.moments.mu_y, art.moments);
      break;
  }
  return art;
}

StatValue eval_statistic(const TestArtifact& art, const LabelVector& lab) {
  switch (art.kind) {
    case TestKind::nn:
      return t_nn(art.knn, lab);
    case TestKind::mst_run:
      return t_runs(art.tree_edges, lab, StatName::mst_run);
    case TestKind::shp_run:
      return t_runs(art.tree_edges, lab, StatName::shp_run);
    case TestKind::nbp:
      return t_nbp(art.match, lab);
    case TestKind::cf_nn:
    case TestKind::cf_mst: {
      std::int64_t sxx = 0, syy = 0;
      for (auto [i, j] : art.ugraph.edges) {
        if (lab.labels[i] == 1 && lab.labels[j] == 1) ++sxx;
        if (lab.labels[i] == 2 && lab.labels[j] == 2) ++syy;
      }
      const double v = cf_quadform(static_cast<double>(sxx), static_cast<double>(syy), art.moments);
      return StatValue{art.kind == TestKind::cf_nn ? StatName::cf_nn : StatName::cf_mst, v,
                       Side::reject_large};
    }
  }
  throw std::logic_error("unknown test kind");
}

TestReport permutation_test(const SquareMatrix& dm, const TestOptions& opt,
                            const LabelVector& lab, const PermutationPlan& plan) {
  plan.validate();
  const TestArtifact art = build_artifact(dm, opt, lab.m, lab.n);
  const StatValue observed = eval_statistic(art, lab);

  const std::size_t B = plan.B;
  std::vector<std::uint8_t> extreme(B, 0);
  parallel_for(B, [&](std::size_t b) {
    // Stream b+1 of the plan seed; shuffles the canonical labeling so the
    // draw depends only on (seed, b, m, n).
    RngStream rng = RngStream::from(plan.seed, b + 1);
    LabelVector perm = LabelVector::canonical(lab.m, lab.n);
    rng.shuffle(std::span<std::uint8_t>(perm.labels));
    const StatValue s = eval_statistic(art, perm);
    const bool as_extreme = observed.side == Side::reject_large ? (s.value >= observed.value)
                                                                : (s.value <= observed.value);
    extreme[b] = as_extreme ? 1 : 0;
  });
  std::size_t count = 0;
  for (std::uint8_t e : extreme) count += e;

  TestReport rep;
  rep.stat = observed;
  rep.p_value = static_cast<double>(1 + count) / static_cast<double>(1 + B);
  rep.alpha = plan.alpha;
  rep.reject = rep.p_value <= plan.alpha;
  rep.method = CalibrationMethod::permutation;
  rep.B_used = B;
  rep.seed = plan.seed;
  return rep;
}

namespace {

double lchoose(long n, long k) {
  if (k < 0 || n < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double exp_or_zero(double lx) {
  return std::isinf(lx) ? 0.0 : std::exp(lx);
}

// P(R = r) for m ones and n twos in uniformly random order along a path.
double runs_pmf(long m, long n, long r, double lcNm) {
  if (r < 2 || r > m + n) return 0.0;
  if (r % 2 == 0) {
    const long k = r / 2;
    return 2.0 * exp_or_zero(lchoose(m - 1, k - 1) + lchoose(n - 1, k - 1) - lcNm);
  }
  const long k = (r - 1) / 2;
  return exp_or_zero(lchoose(m - 1, k - 1) + lchoose(n - 1, k) - lcNm) +
         exp_or_zero(lchoose(m - 1, k) + lchoose(n - 1, k - 1) - lcNm);
}

// Even pooled size: P(T = t) with floor(N/2) fixed pairs.
double nbp_pmf_even(long m, long n, long t, double lcNm) {
  const long I = (m + n) / 2;
  if (t < 0 || t > I || t > m || t > n || (m - t) % 2 != 0) return 0.0;
  return exp_or_zero(lchoose(I, t) + static_cast<double>(t) * std::log(2.0) +
                     lchoose(I - t, (m - t) / 2) - lcNm);
}

double nbp_cdf_even(long m, long n, long a) {
  const double lcNm = lchoose(m + n, m);
  double cdf = 0.0;
  for (long t = m % 2; t <= a; t += 2) cdf += nbp_pmf_even(m, n, t, lcNm);
  return std::min(cdf, 1.0);
}

}  // namespace

double shp_run_null_cdf(std::size_t m, std::size_t n, long r) {
  if (m < 1 || n < 1) throw std::invalid_argument("shp_run_null_cdf: m, n >= 1 required");
  const long N = static_cast<long>(m + n);
  if (r < 1 || r > N) throw std::invalid_argument("shp_run_null_cdf: r out of range");
  const double lcNm = lchoose(N, static_cast<long>(m));
  double cdf = 0.0;
  for (long t = 2; t <= r; ++t) cdf += runs_pmf(static_cast<long>(m), static_cast<long>(n), t, lcNm);
  return std::min(cdf, 1.0);
}

double nbp_null_cdf(std::size_t m, std::size_t n, long a) {
  if (m < 1 || n < 1) throw std::invalid_argument("nbp_null_cdf: m, n >= 1 required");
  const long N = static_cast<long>(m + n);
  const long half = N / 2;
  if (a < 0 || a > half) throw std::invalid_argument("nbp_null_cdf: a out of range");
  const long ml = static_cast<long>(m);
  const long nl = static_cast<long>(n);
  if (N % 2 == 0) {
    if ((a - ml) % 2 != 0) {
      throw std::invalid_argument("nbp_null_cdf: a must have the parity of m for even N");
    }
    return nbp_cdf_even(ml, nl, a);
  }
  // Odd N: the fixed matching leaves one fixed vertex out; condition on
  // its label (probability m/N resp. n/N under uniform labeling).
  const double wm = static_cast<double>(m) / static_cast<double>(N);
  const double wn = static_cast<double>(n) / static_cast<double>(N);
  const double cdf = wm * nbp_cdf_even(ml - 1, nl, a) + wn * nbp_cdf_even(ml, nl - 1, a);
  return std::min(cdf, 1.0);
}

TestReport exact_null_test(const StatValue& stat, std::size_t m, std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha in (0,1) required");
  double p = 0.0;
  if (stat.name == StatName::shp_run) {
    p = shp_run_null_cdf(m, n, std::lround(stat.value));
  } else if (stat.name == StatName::nbp) {
    p = nbp_null_cdf(m, n, std::lround(stat.value));
  } else {
    throw std::invalid_argument("exact_null_test supports only shp_run and nbp statistics");
  }
  TestReport rep;
  rep.stat = stat;
  rep.p_value = p;
  rep.alpha = alpha;
  rep.reject = p <= alpha;
  rep.method = CalibrationMethod::exact_null;
  rep.B_used = 0;
  rep.seed = 0;
  return rep;
}

TestReport run_test(const SquareMatrix& dm, const TestOptions& opt, const LabelVector& lab,
                    const PermutationPlan& plan, CalibrationMethod method) {
  if (method == CalibrationMethod::permutation) {
    return permutation_test(dm, opt, lab, plan);
  }
  if (opt.kind != TestKind::shp_run && opt.kind != TestKind::nbp) {
    throw std::invalid_argument("exact calibration is only available for shp and nbp");
  }
  const TestArtifact art = build_artifact(dm, opt, lab.m, lab.n);
  const StatValue observed = eval_statistic(art, lab);
  TestReport rep = exact_null_test(observed, lab.m, lab.n, plan.alpha);
  rep.seed = plan.seed;
  return rep;
}

}  // namespace graphtest

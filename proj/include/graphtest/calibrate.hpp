#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "graphtest/graphs.hpp"
#include "graphtest/matrix.hpp"
#include "graphtest/stats.hpp"

namespace graphtest {

struct PermutationPlan {
  std::uint64_t B = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.05;

  void validate() const;  // B >= 1, 0 < alpha < 1
};

enum class CalibrationMethod { permutation, exact_null };

struct TestReport {
  StatValue stat;
  double p_value = 1.0;
  bool reject = false;
  CalibrationMethod method = CalibrationMethod::permutation;
  std::uint64_t B_used = 0;
  std::uint64_t seed = 0;
  double alpha = 0.05;
};

enum class TestKind { nn, mst_run, shp_run, nbp, cf_nn, cf_mst };

std::string_view to_string(TestKind t);
// CLI tokens nn | mst | shp | nbp | cf-nn | cf-mst.
std::optional<TestKind> test_kind_from_string(std::string_view s);

struct TestOptions {
  TestKind kind = TestKind::nn;
  std::size_t k = 3;  // nn / cf_nn neighbor count
  ShpMode shp_mode = ShpMode::automatic;
};

// Graph artifact for one test on one dissimilarity matrix. Built once per
// test invocation; label permutations reuse it unchanged (the matrix never
// depends on labels).
struct TestArtifact {
  TestKind kind;
  std::size_t n = 0;
  KnnDigraph knn;                      // nn
  std::vector<VertexPair> tree_edges;  // mst_run / shp_run
  Matching match;                      // nbp
  UndirectedGraph ugraph;              // cf_nn / cf_mst
  CfMoments moments;                   // cf_nn / cf_mst
};

TestArtifact build_artifact(const SquareMatrix& dm, const TestOptions& opt,
                            std::size_t m, std::size_t n);

StatValue eval_statistic(const TestArtifact& art, const LabelVector& lab);

// Conditional (permutation) test. Permutation b draws a label arrangement
// by Fisher-Yates shuffling the canonical labeling with the stream derived
// from (plan.seed, b); p = (1 + #as-or-more-extreme) / (1 + B).
TestReport permutation_test(const SquareMatrix& dm, const TestOptions& opt,
                            const LabelVector& lab, const PermutationPlan& plan);

// P(run count <= r) for a uniformly random arrangement of m ones and n
// twos along a fixed path. Binomials are evaluated in log space.
double shp_run_null_cdf(std::size_t m, std::size_t n, long r);

// P(T_NBP <= a) under uniformly random labeling with the matching (and,
// for odd N, the dropped vertex) fixed. Even N requires a = m (mod 2);
// odd N mixes the two dropped-label cases with weights m/N and n/N.
double nbp_null_cdf(std::size_t m, std::size_t n, long a);

// Exact left-tail test for the distribution-free statistics (shp_run, nbp).
TestReport exact_null_test(const StatValue& stat, std::size_t m, std::size_t n, double alpha);

// Dispatch: permutation for every statistic, exact_null only for
// shp_run / nbp (throws std::invalid_argument otherwise).
TestReport run_test(const SquareMatrix& dm, const TestOptions& opt, const LabelVector& lab,
                    const PermutationPlan& plan, CalibrationMethod method);

}  // namespace graphtest

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphtest/matrix.hpp"

namespace graphtest {

// Coordinate-wise distance family phi(u, v) = h{ (1/d) sum_q psi(|u_q - v_q|) }.
//   euclid_scaled: h(t) = sqrt(t), psi(t) = t^2   (equals d^{-1/2} * ||u - v||)
//   lin:           h(t) = t,       psi(t) = t
//   log1p:         h(t) = t,       psi(t) = log(1 + t)
//   expneg:        h(t) = t,       psi(t) = 1 - exp(-t)
enum class KernelFamily { euclid_scaled, lin, log1p, expneg };

struct KernelSpec {
  KernelFamily family = KernelFamily::euclid_scaled;
};

std::string_view to_string(KernelFamily f);
// Accepts the CLI tokens euclid | lin | log | exp.
std::optional<KernelFamily> kernel_from_string(std::string_view s);

// Pooled two-sample data: rows 0..m-1 come from sample 1, rows m..m+n-1
// from sample 2, stored row-major with a common dimension.
struct PooledSample {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t size() const { return m + n; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }

  // Enforces N >= 3, d >= 1, finite coordinates, consistent storage size.
  void validate() const;
};

struct DistanceMatrix {
  SquareMatrix values;
  KernelSpec kernel;
};

// phi_{h,psi}(u, v). Coordinate sums use pairwise (tree) summation so the
// rounding error grows O(log d); the per-coordinate terms are symmetric in
// (u, v), which makes the result exactly symmetric as well.
double kernel_distance(std::span<const double> u, std::span<const double> v, KernelSpec k);

// All pairwise distances over the pooled sample; rows filled in parallel,
// each entry computed independently so results do not depend on the
// thread count.
DistanceMatrix pairwise_matrix(const PooledSample& z, KernelSpec k);

}  // namespace graphtest

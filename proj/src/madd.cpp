#include "graphtest/madd.hpp"

#include <cmath>
#include <stdexcept>

#include "graphtest/parallel.hpp"

namespace graphtest {

SquareMatrix madd_of(const SquareMatrix& base) {
  require_valid_dissimilarity(base);
  const std::size_t N = base.n;
  if (N < 3) throw std::invalid_argument("madd needs N >= 3 (divisor N-2)");
  SquareMatrix out(N);
  const double inv = 1.0 / static_cast<double>(N - 2);
  parallel_for(N, [&](std::size_t i) {
    const double* bi = base.row(i);
    for (std::size_t j = i + 1; j < N; ++j) {
      const double* bj = base.row(j);
      double s = 0.0;
      for (std::size_t l = 0; l < N; ++l) {
        if (l == i || l == j) continue;
        s += std::fabs(bi[l] - bj[l]);
      }
      out(i, j) = s * inv;
    }
  });
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) out(j, i) = out(i, j);
  }
  return out;
}

MaddMatrix madd_matrix(const DistanceMatrix& base) {
  MaddMatrix out;
  out.base_kernel = base.kernel;
  out.values = madd_of(base.values);
  return out;
}

}  // namespace graphtest

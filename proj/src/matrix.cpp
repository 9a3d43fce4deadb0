#include "graphtest/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace graphtest {

bool is_valid_dissimilarity(const SquareMatrix& dm) {
  if (dm.n == 0 || dm.v.size() != dm.n * dm.n) return false;
  for (std::size_t i = 0; i < dm.n; ++i) {
    if (dm(i, i) != 0.0) return false;
    for (std::size_t j = 0; j < dm.n; ++j) {
      const double x = dm(i, j);
      if (!std::isfinite(x) || x < 0.0) return false;
      if (dm(j, i) != x) return false;
    }
  }
  return true;
}

void require_valid_dissimilarity(const SquareMatrix& dm) {
  if (!is_valid_dissimilarity(dm)) {
    throw std::invalid_argument(
        "dissimilarity matrix must be symmetric, finite, non-negative with zero diagonal");
  }
}

}  // namespace graphtest

#pragma once

#include <cstddef>
#include <vector>

namespace graphtest {

// Dense row-major square matrix of doubles.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> v;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size) : n(size), v(size * size, 0.0) {}

  double operator()(std::size_t i, std::size_t j) const { return v[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return v[i * n + j]; }

  const double* row(std::size_t i) const { return v.data() + i * n; }
};

// Checks symmetry, zero diagonal, non-negative finite entries.
bool is_valid_dissimilarity(const SquareMatrix& dm);

// Throws std::invalid_argument when the check above fails.
void require_valid_dissimilarity(const SquareMatrix& dm);

}  // namespace graphtest

#pragma once

#include "graphtest/kernels.hpp"
#include "graphtest/matrix.hpp"

namespace graphtest {

struct MaddMatrix {
  SquareMatrix values;
  KernelSpec base_kernel;
};

// Mean of absolute differences of pairwise distances:
//   rho(i, j) = (1/(N-2)) * sum_{l != i,j} |base(i,l) - base(j,l)|.
// Requires N >= 3. The sum runs over l ascending, skipping i and j.
SquareMatrix madd_of(const SquareMatrix& base);

MaddMatrix madd_matrix(const DistanceMatrix& base);

}  // namespace graphtest

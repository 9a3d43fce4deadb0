#include "graphtest/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "graphtest/parallel.hpp"

namespace graphtest {

std::string_view to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::euclid_scaled: return "euclid";
    case KernelFamily::lin: return "lin";
    case KernelFamily::log1p: return "log";
    case KernelFamily::expneg: return "exp";
  }
  return "?";
}

std::optional<KernelFamily> kernel_from_string(std::string_view s) {
  if (s == "euclid") return KernelFamily::euclid_scaled;
  if (s == "lin") return KernelFamily::lin;
  if (s == "log") return KernelFamily::log1p;
  if (s == "exp") return KernelFamily::expneg;
  return std::nullopt;
}

void PooledSample::validate() const {
  if (m < 1 || n < 1) throw std::invalid_argument("pooled sample needs both samples non-empty");
  if (size() < 3) throw std::invalid_argument("pooled sample needs N >= 3");
  if (dim < 1) throw std::invalid_argument("pooled sample needs d >= 1");
  if (data.size() != size() * dim) throw std::invalid_argument("pooled sample storage size mismatch");
  for (double x : data) {
    if (!std::isfinite(x)) throw std::invalid_argument("pooled sample has non-finite coordinate");
  }
}

namespace {

template <typename Psi>
double tree_sum(const double* u, const double* v, std::size_t lo, std::size_t hi, Psi psi) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (std::size_t q = lo; q < hi; ++q) s += psi(std::fabs(u[q] - v[q]));
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(u, v, lo, mid, psi) + tree_sum(u, v, mid, hi, psi);
}

}  // namespace

double kernel_distance(std::span<const double> u, std::span<const double> v, KernelSpec k) {
  const std::size_t d = u.size();
  if (d == 0 || v.size() != d) throw std::invalid_argument("kernel_distance: dimension mismatch");
  for (std::size_t q = 0; q < d; ++q) {
    if (!std::isfinite(u[q]) || !std::isfinite(v[q])) {
      throw std::invalid_argument("kernel_distance: non-finite coordinate");
    }
  }
  const double* up = u.data();
  const double* vp = v.data();
  double mean = 0.0;
  switch (k.family) {
    case KernelFamily::euclid_scaled:
      mean = tree_sum(up, vp, 0, d, [](double t) { return t * t; }) / static_cast<double>(d);
      return std::sqrt(mean);
    case KernelFamily::lin:
      return tree_sum(up, vp, 0, d, [](double t) { return t; }) / static_cast<double>(d);
    case KernelFamily::log1p:
      return tree_sum(up, vp, 0, d, [](double t) { return std::log1p(t); }) /
             static_cast<double>(d);
    case KernelFamily::expneg:
      return tree_sum(up, vp, 0, d, [](double t) { return -std::expm1(-t); }) /
             static_cast<double>(d);
  }
  throw std::logic_error("unknown kernel family");
}

DistanceMatrix pairwise_matrix(const PooledSample& z, KernelSpec k) {
  z.validate();
  const std::size_t N = z.size();
  DistanceMatrix out;
  out.kernel = k;
  out.values = SquareMatrix(N);
  SquareMatrix& dm = out.values;
  parallel_for(N, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      dm(i, j) = kernel_distance(z.row(i), z.row(j), k);
    }
  });
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) dm(j, i) = dm(i, j);
  }
  return out;
}

}  // namespace graphtest

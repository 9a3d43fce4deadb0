#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "graphtest/kernels.hpp"
#include "graphtest/rng.hpp"

using namespace graphtest;

namespace {

PooledSample make_sample(std::size_t m, std::size_t n, std::size_t d,
                         std::vector<double> data) {
  PooledSample z;
  z.m = m;
  z.n = n;
  z.dim = d;
  z.data = std::move(data);
  return z;
}

const KernelSpec kAll[] = {{KernelFamily::euclid_scaled},
                           {KernelFamily::lin},
                           {KernelFamily::log1p},
                           {KernelFamily::expneg}};

}  // namespace

TEST_CASE("kernel_distance: identical points give zero for every family") {
  const std::vector<double> u{1.5, -2.0};
  for (KernelSpec k : kAll) {
    CHECK(kernel_distance(u, u, k) == 0.0);
  }
}

TEST_CASE("kernel_distance: hand-computed values") {
  CHECK(kernel_distance(std::vector<double>{0, 0}, std::vector<double>{2, 4},
                        {KernelFamily::lin}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(kernel_distance(std::vector<double>{0}, std::vector<double>{std::exp(1.0) - 1.0},
                        {KernelFamily::log1p}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kernel_distance(std::vector<double>{0, 0, 0, 0}, std::vector<double>{1, 1, 1, 1},
                        {KernelFamily::euclid_scaled}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kernel_distance: errors on bad input") {
  CHECK_THROWS_AS(kernel_distance(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0},
                                  {KernelFamily::lin}),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernel_distance(std::vector<double>{std::nan("")}, std::vector<double>{1.0},
                                  {KernelFamily::lin}),
                  std::invalid_argument);
}

TEST_CASE("kernel_distance: exact symmetry on random pairs") {
  RngStream rng = RngStream::from(11, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t d = 1 + static_cast<std::size_t>(rng.next_below(60));
    std::vector<double> u(d), v(d);
    for (auto& x : u) x = rng.next_normal() * 3.0;
    for (auto& x : v) x = rng.next_normal() * 3.0;
    for (KernelSpec k : kAll) {
      CHECK(kernel_distance(u, v, k) == kernel_distance(v, u, k));
    }
  }
}

TEST_CASE("kernel_distance: triangle inequality for the metric families") {
  RngStream rng = RngStream::from(12, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t d = 1 + static_cast<std::size_t>(rng.next_below(20));
    std::vector<double> a(d), b(d), c(d);
    for (auto& x : a) x = rng.next_normal() * 2.0;
    for (auto& x : b) x = rng.next_normal() * 2.0;
    for (auto& x : c) x = rng.next_normal() * 2.0;
    for (KernelSpec k : kAll) {
      const double ab = kernel_distance(a, b, k);
      const double ac = kernel_distance(a, c, k);
      const double bc = kernel_distance(b, c, k);
      CHECK(ab <= (ac + bc) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("kernel_distance: expneg family is bounded below one") {
  RngStream rng = RngStream::from(13, 0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> u(8), v(8);
    for (auto& x : u) x = rng.next_normal() * 50.0;
    for (auto& x : v) x = rng.next_normal() * 50.0;
    const double w = kernel_distance(u, v, {KernelFamily::expneg});
    CHECK(w >= 0.0);
    CHECK(w < 1.0);
  }
}

TEST_CASE("pairwise_matrix: identical points give the zero matrix") {
  const PooledSample z = make_sample(2, 1, 2, {1.0, 2.0, 1.0, 2.0, 1.0, 2.0});
  for (KernelSpec k : kAll) {
    const DistanceMatrix dm = pairwise_matrix(z, k);
    for (double x : dm.values.v) CHECK(x == 0.0);
  }
}

TEST_CASE("pairwise_matrix: d=1 points {0, 0, 2} with lin") {
  const PooledSample z = make_sample(2, 1, 1, {0.0, 0.0, 2.0});
  const DistanceMatrix dm = pairwise_matrix(z, {KernelFamily::lin});
  CHECK(dm.values(0, 1) == 0.0);
  CHECK(dm.values(0, 2) == 2.0);
  CHECK(dm.values(1, 2) == 2.0);
  CHECK(dm.values(0, 0) == 0.0);
}

TEST_CASE("pairwise_matrix: output equals its own transpose") {
  RngStream rng = RngStream::from(14, 0);
  PooledSample z;
  z.m = 4;
  z.n = 5;
  z.dim = 7;
  z.data.resize(9 * 7);
  for (auto& x : z.data) x = rng.next_normal();
  for (KernelSpec k : kAll) {
    const DistanceMatrix dm = pairwise_matrix(z, k);
    CHECK(is_valid_dissimilarity(dm.values));
    for (std::size_t i = 0; i < 9; ++i) {
      for (std::size_t j = 0; j < 9; ++j) CHECK(dm.values(i, j) == dm.values(j, i));
    }
  }
}

TEST_CASE("pairwise_matrix: rejects N < 3") {
  const PooledSample z = make_sample(1, 1, 1, {0.0, 1.0});
  CHECK_THROWS_AS(pairwise_matrix(z, {KernelFamily::lin}), std::invalid_argument);
}

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

namespace graphtest {

// SplitMix64 output function. Doubles as the seed-derivation hash so that
// substreams are reproducible across platforms and languages.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Stream s of a master seed. Streams are indexed, not split recursively;
// nested derivations chain derive_seed calls.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

// Counter-based SplitMix64 stream. The exact algorithms are part of the
// output contract (documented in the README): uniforms take the top 53
// bits, normals use the Marsaglia polar method (with the second variate
// cached), and Student-t variates are Z0 * sqrt(nu / (Z1^2+...+Znu^2)).
class RngStream {
 public:
  static RngStream from(std::uint64_t seed, std::uint64_t stream) noexcept {
    RngStream r;
    r.state_ = derive_seed(seed, stream);
    return r;
  }

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double next_uniform(double a, double b) noexcept { return a + (b - a) * next_unit(); }

  // Bounded integer in [0, bound) via 128-bit multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Standard normal, Marsaglia polar method.
  double next_normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Standard Student-t with nu degrees of freedom.
  double next_student_t(unsigned nu) noexcept {
    const double z = next_normal();
    double chi2 = 0.0;
    for (unsigned i = 0; i < nu; ++i) {
      const double g = next_normal();
      chi2 += g * g;
    }
    return z / std::sqrt(chi2 / static_cast<double>(nu));
  }

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> xs) noexcept {
    for (std::size_t i = xs.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace graphtest

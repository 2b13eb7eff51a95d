#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "alphamod/errors.hpp"

namespace alphamod::fft {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// Per-size plan: bit-reversal permutation and forward twiddle table.
struct Plan {
  std::vector<std::uint32_t> bitrev;
  std::vector<cd> twiddle;  // twiddle[j] = exp(-2*pi*i*j/n), j < n/2

  explicit Plan(std::size_t n) : bitrev(n), twiddle(n / 2) {
    int log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t r = 0;
      for (int b = 0; b < log2n; ++b)
        if (i & (std::size_t{1} << b)) r |= std::uint32_t{1} << (log2n - 1 - b);
      bitrev[i] = r;
    }
    const double step = -2.0 * M_PI / static_cast<double>(n);
    for (std::size_t j = 0; j < n / 2; ++j)
      twiddle[j] = cd(std::cos(step * static_cast<double>(j)), std::sin(step * static_cast<double>(j)));
  }
};

inline std::shared_ptr<const Plan> plan_for(std::size_t n) {
  static std::shared_mutex mu;
  static std::map<std::size_t, std::shared_ptr<const Plan>> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto plan = std::make_shared<const Plan>(n);
  std::unique_lock lock(mu);
  auto [it, inserted] = cache.emplace(n, plan);
  return it->second;
}

}  // namespace detail

// In-place unnormalized transform: sign -1 computes sum f_j e^{-2pi i jk/n}
// (forward), sign +1 the conjugate sum. Power-of-two sizes only.
inline void transform_pow2(std::vector<cd>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 1) return;
  if (!is_pow2(n)) throw DomainError("transform size must be a power of two");
  auto plan = detail::plan_for(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = plan->bitrev[i];
    if (i < r) std::swap(data[i], data[r]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cd w = plan->twiddle[j * stride];
        if (inverse) w = std::conj(w);
        cd& a = data[start + j];
        cd& b = data[start + j + half];
        cd t = b * w;
        b = a - t;
        a += t;
      }
    }
  }
}

}  // namespace alphamod::fft

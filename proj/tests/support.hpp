#pragma once

#include <cstdint>
#include <random>

#include "tmcf/poly.hpp"

namespace tmcf::testing {

/// Random polynomial with degree at most max_degree (possibly zero).
inline PolyZ random_poly(std::mt19937_64& rng, std::size_t max_degree) {
  PolyZ p;
  for (std::size_t i = 0; i <= max_degree; ++i) {
    if (rng() & 1) p.flip_bit(i);
  }
  return p;
}

/// Random polynomial of exact degree `degree`.
inline PolyZ random_poly_of_degree(std::mt19937_64& rng, std::size_t degree) {
  PolyZ p = random_poly(rng, degree);
  p.set_bit(degree);
  return p;
}

/// Bit-by-bit convolution, independent of the word-level kernels.
inline PolyZ convolve(const PolyZ& x, const PolyZ& y) {
  PolyZ out;
  if (x.is_zero() || y.is_zero()) return out;
  for (std::int64_t i = 0; i <= x.degree(); ++i) {
    if (!x.bit(static_cast<std::size_t>(i))) continue;
    for (std::int64_t j = 0; j <= y.degree(); ++j) {
      if (y.bit(static_cast<std::size_t>(j))) out.flip_bit(static_cast<std::size_t>(i + j));
    }
  }
  return out;
}

}  // namespace tmcf::testing

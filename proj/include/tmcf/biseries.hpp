#pragma once

#include <cstdint>

#include "tmcf/bipoly.hpp"

namespace tmcf {

inline constexpr std::int64_t kDefaultTotalDegreeCap = 64;

/// Element of GF(2)[[a,b]] known up to total degree `cap` inclusive.
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(const BiPoly& p, std::int64_t cap) : poly_(p.truncated_total(cap)), cap_(cap) {}

  const BiPoly& poly() const { return poly_; }
  std::int64_t cap() const { return cap_; }
  bool coefficient(std::int64_t i, std::int64_t j) const { return poly_.coefficient(i, j); }
  bool is_zero() const { return poly_.is_zero(); }
  bool has_unit_constant() const { return poly_.coefficient(0, 0); }

  friend bool operator==(const BiSeries&, const BiSeries&) = default;

 private:
  BiPoly poly_;
  std::int64_t cap_ = kDefaultTotalDegreeCap;
};

BiSeries operator+(const BiSeries& x, const BiSeries& y);
BiSeries operator*(const BiSeries& x, const BiSeries& y);
/// Inverse of a series with constant term 1 (Newton doubling). Throws
/// InvalidArgument on a non-unit.
BiSeries biseries_inv(const BiSeries& x);
/// num / den to the smaller of the two caps; den must have constant term 1.
BiSeries biseries_div(const BiSeries& num, const BiSeries& den);

}  // namespace tmcf

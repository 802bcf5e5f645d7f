#pragma once

#include <cstdint>
#include <string>

#include "tmcf/bipoly.hpp"

namespace tmcf {

/// numerator * tau^exponent with tau = 1 + a + b, the exponent possibly
/// negative. Canonical: the numerator is never divisible by tau, and zero is
/// stored with exponent 0.
class TauLaurent {
 public:
  TauLaurent() = default;
  TauLaurent(BiPoly numerator, std::int64_t tau_exponent);

  static TauLaurent from(const BiPoly& p) { return {p, 0}; }
  static TauLaurent tau_power(std::int64_t e) { return {BiPoly::one(), e}; }

  const BiPoly& numerator() const { return numerator_; }
  std::int64_t tau_exponent() const { return tau_exponent_; }
  bool is_zero() const { return numerator_.is_zero(); }
  /// numerator * tau^(exponent + shift) as a polynomial; requires the total
  /// exponent to be nonnegative.
  BiPoly cleared(std::int64_t shift) const;
  std::string to_string() const;

  friend bool operator==(const TauLaurent&, const TauLaurent&) = default;

 private:
  BiPoly numerator_;
  std::int64_t tau_exponent_ = 0;
};

TauLaurent operator+(const TauLaurent& x, const TauLaurent& y);
TauLaurent operator*(const TauLaurent& x, const TauLaurent& y);
TauLaurent pow(const TauLaurent& x, std::uint64_t n);

enum class TauOp { add, mul };
TauLaurent tau_laurent_arith(const TauLaurent& x, const TauLaurent& y, TauOp op);

}  // namespace tmcf

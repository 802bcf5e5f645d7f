#pragma once

#include <cstdint>
#include <string>

#include "tmcf/poly.hpp"

namespace tmcf {

/// Default number of negative-exponent positions carried by series work.
/// Overridable per call and through the TMCF_PRECISION environment variable.
inline constexpr std::int64_t kDefaultPrecision = 4096;

/// Reads TMCF_PRECISION when set, otherwise kDefaultPrecision.
std::int64_t default_precision();

/// Norm 2^log2 of an element of GF(2)((1/z)); the zero element has
/// log2 == kMinusInfinity.
struct Norm {
  std::int64_t log2 = kMinusInfinity;

  bool is_zero() const { return log2 == kMinusInfinity; }
  double value() const;
  std::string to_string() const;
  friend auto operator<=>(const Norm&, const Norm&) = default;
};

/// Truncated formal Laurent series in z^{-1} over GF(2).
///
/// The coefficient of z^e is known for every e >= horizon(); below the
/// horizon nothing is claimed. Stored as body * z^low where body is a
/// polynomial with constant term 1 (or zero). An exact series (a Laurent
/// polynomial known to all orders) has horizon kExactHorizon.
class LaurentZ {
 public:
  static constexpr std::int64_t kExactHorizon = std::numeric_limits<std::int64_t>::min() / 4;

  /// Exact zero.
  LaurentZ() = default;
  LaurentZ(PolyZ body, std::int64_t low, std::int64_t horizon);

  static LaurentZ from_poly(const PolyZ& p) { return LaurentZ(p, 0, kExactHorizon); }
  static LaurentZ monomial(std::int64_t exponent, std::int64_t horizon = kExactHorizon);
  /// p/q expanded with every exponent >= -precision correct.
  static LaurentZ from_rational(const PolyZ& p, const PolyZ& q, std::int64_t precision);

  bool is_exact() const { return horizon_ == kExactHorizon; }
  /// Zero on the whole trusted range.
  bool is_zero() const { return body_.is_zero(); }
  /// Exponent of the leading term, kMinusInfinity when zero on the trusted range.
  std::int64_t top() const;
  /// Upper bound for the exponent of the true leading term: top() when nonzero,
  /// horizon()-1 when only known to vanish above the horizon.
  std::int64_t magnitude_bound() const;
  std::int64_t horizon() const { return horizon_; }
  std::int64_t low() const { return low_; }
  const PolyZ& body() const { return body_; }

  /// Coefficient of z^e; throws PrecisionExhausted below the horizon.
  bool coefficient(std::int64_t exponent) const;
  /// The same series with the horizon raised to at least h.
  LaurentZ with_horizon(std::int64_t h) const;
  /// Part with nonnegative exponents; throws PrecisionExhausted if horizon > 0.
  PolyZ polynomial_part() const;
  /// Part with strictly negative exponents.
  LaurentZ fractional_part() const;

  std::string to_string(std::size_t max_terms = 32) const;

  friend bool operator==(const LaurentZ&, const LaurentZ&) = default;

 private:
  void normalize();

  PolyZ body_;
  std::int64_t low_ = 0;
  std::int64_t horizon_ = kExactHorizon;
};

LaurentZ operator+(const LaurentZ& x, const LaurentZ& y);
/// horizon = max(x.horizon + bound(y), y.horizon + bound(x)), bound being the
/// largest exponent that can carry a nonzero coefficient.
LaurentZ operator*(const LaurentZ& x, const LaurentZ& y);
LaurentZ series_mul(const LaurentZ& x, const LaurentZ& y);
LaurentZ operator*(const PolyZ& p, const LaurentZ& x);

/// Multiplicative inverse. For exact input the result is carried down to
/// exponent -precision. Throws DivisionByZero on a series that vanishes on
/// its trusted range.
LaurentZ series_inv(const LaurentZ& x, std::int64_t precision = default_precision());
/// Square root by halving exponents. Throws NotASquare when an odd exponent
/// is present on the trusted range.
LaurentZ series_sqrt(const LaurentZ& x);
LaurentZ series_square(const LaurentZ& x);
LaurentZ series_pow(const LaurentZ& x, unsigned n);
/// Formal derivative d/dz, termwise; horizon drops by one.
LaurentZ derivative(const LaurentZ& x);

struct NormAndFrac {
  Norm norm;
  LaurentZ frac;
};
NormAndFrac norm_and_frac(const LaurentZ& x);
Norm norm(const LaurentZ& x);
Norm norm(const PolyZ& p);

/// True when x and y agree on every exponent >= from (both must be trusted there).
bool agree_from(const LaurentZ& x, const LaurentZ& y, std::int64_t from);

}  // namespace tmcf

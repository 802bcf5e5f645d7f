#include "tmcf/laurent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "tmcf/errors.hpp"

namespace tmcf {

namespace {

constexpr std::int64_t kExact = LaurentZ::kExactHorizon;

bool is_minus_infinity(std::int64_t v) { return v <= kExact; }

// Sum of two exponents where either may stand for -infinity.
std::int64_t exp_add(std::int64_t x, std::int64_t y) {
  if (is_minus_infinity(x) || is_minus_infinity(y)) return kExact;
  return x + y;
}

std::size_t trailing_zero_bits(const PolyZ& p) {
  std::size_t count = 0;
  for (Word w : p.words()) {
    if (w != 0) return count + static_cast<std::size_t>(std::countr_zero(w));
    count += kWordBits;
  }
  return count;
}

}  // namespace

std::int64_t default_precision() {
  if (const char* env = std::getenv("TMCF_PRECISION")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultPrecision;
}

double Norm::value() const {
  if (is_zero()) return 0.0;
  return std::ldexp(1.0, static_cast<int>(std::clamp<std::int64_t>(log2, -100000, 100000)));
}

std::string Norm::to_string() const {
  if (is_zero()) return "0";
  return "2^" + std::to_string(log2);
}

LaurentZ::LaurentZ(PolyZ body, std::int64_t low, std::int64_t horizon)
    : body_(std::move(body)), low_(low), horizon_(is_minus_infinity(horizon) ? kExact : horizon) {
  normalize();
}

void LaurentZ::normalize() {
  if (!is_exact() && !body_.is_zero() && low_ < horizon_) {
    body_ = body_.shifted(-(horizon_ - low_));
    low_ = horizon_;
  }
  if (body_.is_zero()) {
    low_ = 0;
    return;
  }
  const std::size_t tz = trailing_zero_bits(body_);
  if (tz > 0) {
    body_ = body_.shifted(-static_cast<std::int64_t>(tz));
    low_ += static_cast<std::int64_t>(tz);
  }
}

LaurentZ LaurentZ::monomial(std::int64_t exponent, std::int64_t horizon) {
  return LaurentZ(PolyZ::one(), exponent, horizon);
}

LaurentZ LaurentZ::from_rational(const PolyZ& p, const PolyZ& q, std::int64_t precision) {
  if (q.is_zero()) throw DivisionByZero();
  if (precision < 0) throw InvalidArgument("from_rational: negative precision");
  const auto quotient = divrem(p.shifted(precision), q).quotient;
  return LaurentZ(quotient, -precision, -precision);
}

std::int64_t LaurentZ::top() const {
  if (body_.is_zero()) return kMinusInfinity;
  return low_ + body_.degree();
}

std::int64_t LaurentZ::magnitude_bound() const {
  if (!body_.is_zero()) return top();
  if (is_exact()) return kMinusInfinity;
  return horizon_ - 1;
}

bool LaurentZ::coefficient(std::int64_t exponent) const {
  if (exponent < horizon_) {
    throw PrecisionExhausted("coefficient of z^" + std::to_string(exponent) +
                             " lies below the horizon " + std::to_string(horizon_));
  }
  if (exponent < low_) return false;
  return body_.bit(static_cast<std::size_t>(exponent - low_));
}

LaurentZ LaurentZ::with_horizon(std::int64_t h) const {
  if (h <= horizon_) return *this;
  return LaurentZ(body_, low_, h);
}

PolyZ LaurentZ::polynomial_part() const {
  if (horizon_ > 0) {
    throw PrecisionExhausted("polynomial part unknown: horizon " + std::to_string(horizon_) + " > 0");
  }
  return body_.shifted(low_);
}

LaurentZ LaurentZ::fractional_part() const {
  if (body_.is_zero() || low_ >= 0) return LaurentZ(PolyZ{}, 0, horizon_);
  return LaurentZ(body_.truncated(static_cast<std::size_t>(-low_)), low_, horizon_);
}

std::string LaurentZ::to_string(std::size_t max_terms) const {
  std::string out;
  std::size_t written = 0;
  bool elided = false;
  const std::int64_t deg = body_.degree();
  for (std::int64_t i = deg; i >= 0; --i) {
    if (!body_.bit(static_cast<std::size_t>(i))) continue;
    if (written == max_terms) {
      elided = true;
      break;
    }
    const std::int64_t e = low_ + i;
    if (!out.empty()) out += '+';
    if (e == 0) {
      out += '1';
    } else if (e == 1) {
      out += 'z';
    } else {
      out += "z^" + std::to_string(e);
    }
    ++written;
  }
  if (elided) out += "+...";
  if (!is_exact()) {
    if (!out.empty()) out += '+';
    out += "O(z^" + std::to_string(horizon_ - 1) + ")";
  }
  if (out.empty()) out = "0";
  return out;
}

LaurentZ operator+(const LaurentZ& x, const LaurentZ& y) {
  const std::int64_t horizon = std::max(x.horizon(), y.horizon());
  if (x.is_zero()) return y.with_horizon(horizon);
  if (y.is_zero()) return x.with_horizon(horizon);
  const std::int64_t low = std::min(x.low(), y.low());
  PolyZ body = x.body().shifted(x.low() - low) + y.body().shifted(y.low() - low);
  return LaurentZ(std::move(body), low, horizon);
}

LaurentZ operator*(const LaurentZ& x, const LaurentZ& y) {
  const std::int64_t horizon =
      std::max(exp_add(x.horizon(), y.magnitude_bound()), exp_add(y.horizon(), x.magnitude_bound()));
  if (x.is_zero() || y.is_zero()) return LaurentZ(PolyZ{}, 0, horizon);
  return LaurentZ(x.body() * y.body(), x.low() + y.low(), horizon);
}

LaurentZ series_mul(const LaurentZ& x, const LaurentZ& y) { return x * y; }

LaurentZ operator*(const PolyZ& p, const LaurentZ& x) { return LaurentZ::from_poly(p) * x; }

LaurentZ series_inv(const LaurentZ& x, std::int64_t precision) {
  if (x.is_zero()) throw DivisionByZero();
  if (x.is_exact() && x.body().is_one()) return LaurentZ::monomial(-x.low());
  const std::int64_t t = x.top();
  std::int64_t horizon = -precision;
  if (!x.is_exact()) horizon = std::max(horizon, x.horizon() - 2 * t);
  const std::int64_t count = -t - horizon + 1;
  if (count <= 0) return LaurentZ(PolyZ{}, 0, horizon);
  const std::int64_t n = x.body().degree();
  const auto q = divrem(PolyZ::monomial(static_cast<std::size_t>(n + count - 1)), x.body()).quotient;
  return LaurentZ(q, -(n + count - 1) - x.low(), horizon);
}

LaurentZ series_sqrt(const LaurentZ& x) {
  const std::int64_t h = x.horizon();
  const std::int64_t new_horizon = x.is_exact() ? kExact : (h >= 0 ? (h + 1) / 2 : -((-h) / 2));
  if (x.is_zero()) return LaurentZ(PolyZ{}, 0, new_horizon);
  if ((x.low() % 2) != 0) throw NotASquare("series has odd exponent " + std::to_string(x.low()));
  try {
    return LaurentZ(sqrt(x.body()), x.low() / 2, new_horizon);
  } catch (const NotASquare&) {
    throw NotASquare("series has odd-exponent terms on its trusted range");
  }
}

LaurentZ series_square(const LaurentZ& x) {
  const std::int64_t horizon = x.is_exact() ? kExact : 2 * x.horizon() - 1;
  if (x.is_zero()) return LaurentZ(PolyZ{}, 0, horizon);
  return LaurentZ(x.body().square(), 2 * x.low(), horizon);
}

LaurentZ series_pow(const LaurentZ& x, unsigned n) {
  LaurentZ result = LaurentZ::monomial(0);
  LaurentZ base = x;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = series_square(base);
  }
  return result;
}

LaurentZ derivative(const LaurentZ& x) {
  const std::int64_t horizon = x.is_exact() ? kExact : x.horizon() - 1;
  if (x.is_zero()) return LaurentZ(PolyZ{}, 0, horizon);
  // Keep the bits whose absolute exponent low + i is odd.
  const Word mask = (x.low() % 2 == 0) ? 0xAAAAAAAAAAAAAAAAull : 0x5555555555555555ull;
  std::vector<Word> words(x.body().words().begin(), x.body().words().end());
  for (Word& w : words) w &= mask;
  return LaurentZ(PolyZ(std::move(words)), x.low() - 1, horizon);
}

NormAndFrac norm_and_frac(const LaurentZ& x) { return {norm(x), x.fractional_part()}; }

Norm norm(const LaurentZ& x) { return Norm{x.top()}; }

Norm norm(const PolyZ& p) { return Norm{p.degree()}; }

bool agree_from(const LaurentZ& x, const LaurentZ& y, std::int64_t from) {
  if (x.horizon() > from || y.horizon() > from) {
    throw PrecisionExhausted("agree_from: comparison below a horizon");
  }
  const LaurentZ diff = x + y;
  return diff.is_zero() || diff.top() < from;
}

}  // namespace tmcf

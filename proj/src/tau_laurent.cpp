#include "tmcf/tau_laurent.hpp"

#include <algorithm>

#include "tmcf/errors.hpp"

namespace tmcf {

TauLaurent::TauLaurent(BiPoly numerator, std::int64_t tau_exponent)
    : numerator_(std::move(numerator)), tau_exponent_(tau_exponent) {
  if (numerator_.is_zero()) {
    tau_exponent_ = 0;
    return;
  }
  auto [e, rest] = strip_tau(numerator_);
  numerator_ = std::move(rest);
  tau_exponent_ += e;
}

BiPoly TauLaurent::cleared(std::int64_t shift) const {
  const std::int64_t e = tau_exponent_ + shift;
  if (numerator_.is_zero()) return {};
  if (e < 0) throw InvalidArgument("TauLaurent::cleared: negative tau power remains");
  return numerator_ * pow(BiPoly::tau(), static_cast<std::uint64_t>(e));
}

std::string TauLaurent::to_string() const {
  if (is_zero()) return "0";
  if (tau_exponent_ == 0) return numerator_.to_string();
  return "(" + numerator_.to_string() + ")*tau^" + std::to_string(tau_exponent_);
}

TauLaurent operator+(const TauLaurent& x, const TauLaurent& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const std::int64_t e = std::min(x.tau_exponent(), y.tau_exponent());
  const BiPoly tau = BiPoly::tau();
  const BiPoly nx = x.numerator() * pow(tau, static_cast<std::uint64_t>(x.tau_exponent() - e));
  const BiPoly ny = y.numerator() * pow(tau, static_cast<std::uint64_t>(y.tau_exponent() - e));
  return {nx + ny, e};
}

TauLaurent operator*(const TauLaurent& x, const TauLaurent& y) {
  if (x.is_zero() || y.is_zero()) return {};
  return {x.numerator() * y.numerator(), x.tau_exponent() + y.tau_exponent()};
}

TauLaurent pow(const TauLaurent& x, std::uint64_t n) {
  TauLaurent result = TauLaurent::from(BiPoly::one());
  TauLaurent base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

TauLaurent tau_laurent_arith(const TauLaurent& x, const TauLaurent& y, TauOp op) {
  return op == TauOp::add ? x + y : x * y;
}

}  // namespace tmcf

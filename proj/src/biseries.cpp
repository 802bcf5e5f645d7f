#include "tmcf/biseries.hpp"

#include <algorithm>

#include "tmcf/errors.hpp"

namespace tmcf {

BiSeries operator+(const BiSeries& x, const BiSeries& y) {
  return {x.poly() + y.poly(), std::min(x.cap(), y.cap())};
}

BiSeries operator*(const BiSeries& x, const BiSeries& y) {
  const std::int64_t cap = std::min(x.cap(), y.cap());
  return {x.poly() * y.poly(), cap};
}

BiSeries biseries_inv(const BiSeries& x) {
  if (!x.has_unit_constant()) throw InvalidArgument("biseries_inv: constant term is not 1");
  // In characteristic 2 the Newton step y <- y(2 - xy) reads y <- x y^2.
  BiPoly y = BiPoly::one();
  std::int64_t known = 0;
  while (known < x.cap()) {
    known = std::min(2 * known + 1, x.cap());
    y = (x.poly().truncated_total(known) * y.square()).truncated_total(known);
  }
  return {y, x.cap()};
}

BiSeries biseries_div(const BiSeries& num, const BiSeries& den) {
  if (!den.has_unit_constant()) throw InvalidArgument("biseries_div: denominator is not a unit");
  const std::int64_t cap = std::min(num.cap(), den.cap());
  return BiSeries(num.poly(), cap) * biseries_inv(BiSeries(den.poly(), cap));
}

}  // namespace tmcf

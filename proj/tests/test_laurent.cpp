#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/laurent.hpp"

using tmcf::LaurentZ;
using tmcf::PolyZ;
using tmcf::testing::random_poly;
using tmcf::testing::random_poly_of_degree;

namespace {

PolyZ P(const char* s) { return PolyZ::parse(s); }

LaurentZ mono(std::int64_t e) { return LaurentZ::monomial(e); }

// Random truncated series p/q with |p/q| < 1 known down to -precision.
LaurentZ random_series(std::mt19937_64& rng, std::int64_t precision) {
  const PolyZ q = random_poly_of_degree(rng, 20);
  PolyZ p = random_poly(rng, 19);
  if (p.is_zero()) p = PolyZ::one();
  return LaurentZ::from_rational(p, q, precision);
}

}  // namespace

TEST_CASE("series_mul examples") {
  CHECK(mono(-1) * mono(-1) == mono(-2));
  const LaurentZ s = mono(-1) + mono(-4) + mono(-16);
  CHECK(s * s == mono(-2) + mono(-8) + mono(-32));
  CHECK(tmcf::series_square(s) == s * s);
}

TEST_CASE("series_inv examples") {
  CHECK(tmcf::series_inv(LaurentZ::from_poly(P("z"))) == mono(-1));
  const LaurentZ g = tmcf::series_inv(LaurentZ::from_poly(P("z+1")), 50);
  CHECK(g.horizon() == -50);
  for (std::int64_t e = -1; e >= -50; --e) CHECK(g.coefficient(e));
  CHECK_FALSE(g.coefficient(0));
  CHECK_THROWS_AS(g.coefficient(-51), tmcf::PrecisionExhausted);
  CHECK_THROWS_AS(tmcf::series_inv(LaurentZ{}), tmcf::DivisionByZero);
}

TEST_CASE("series_inv round trip on random series") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    const LaurentZ x = random_series(rng, 400);
    const LaurentZ y = tmcf::series_inv(x);
    const LaurentZ back = tmcf::series_inv(y);
    const std::int64_t from = std::max(back.horizon(), x.horizon());
    CHECK(tmcf::agree_from(back, x, from));
    const LaurentZ one = x * y;
    CHECK(tmcf::agree_from(one, mono(0), one.horizon()));
  }
}

TEST_CASE("series_sqrt") {
  CHECK(tmcf::series_sqrt(mono(-2)) == mono(-1));
  CHECK(tmcf::series_sqrt(LaurentZ::from_poly(P("z^2+1"))) == LaurentZ::from_poly(P("z+1")));
  CHECK_THROWS_AS(tmcf::series_sqrt(mono(-3)), tmcf::NotASquare);
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const LaurentZ x = random_series(rng, 300);
    const LaurentZ r = tmcf::series_sqrt(x * x);
    CHECK(tmcf::agree_from(r, x, r.horizon()));
  }
}

TEST_CASE("norm_and_frac") {
  const LaurentZ x = LaurentZ::from_poly(P("z^2+1")) + mono(-1);
  const auto [n, frac] = tmcf::norm_and_frac(x);
  CHECK(n.log2 == 2);
  CHECK(frac == mono(-1));
  CHECK(tmcf::norm_and_frac(LaurentZ::from_poly(P("z^7+z^3+1"))).frac.is_zero());
  CHECK(tmcf::norm(LaurentZ{}).is_zero());
}

TEST_CASE("ultrametric norm") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 60; ++rep) {
    const LaurentZ x = random_series(rng, 200) * mono(static_cast<std::int64_t>(rng() % 7) - 3);
    const LaurentZ y = random_series(rng, 200);
    CHECK(tmcf::norm(x * y).log2 == tmcf::norm(x).log2 + tmcf::norm(y).log2);
    const auto nx = tmcf::norm(x).log2;
    const auto ny = tmcf::norm(y).log2;
    const auto ns = tmcf::norm(x + y).log2;
    CHECK(ns <= std::max(nx, ny));
    if (nx != ny) CHECK(ns == std::max(nx, ny));
  }
}

TEST_CASE("derivative of series") {
  // d/dz z^-3 = -3 z^-4 = z^-4 in characteristic 2; d/dz z^-2 = 0.
  CHECK(tmcf::derivative(mono(-3)) == mono(-4));
  CHECK(tmcf::derivative(mono(-2)).is_zero());
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 30; ++rep) {
    const LaurentZ x = random_series(rng, 300);
    const LaurentZ y = random_series(rng, 300);
    const LaurentZ lhs = tmcf::derivative(x * y);
    const LaurentZ rhs = tmcf::derivative(x) * y + x * tmcf::derivative(y);
    CHECK(tmcf::agree_from(lhs, rhs, std::max(lhs.horizon(), rhs.horizon())));
  }
}

TEST_CASE("horizon bookkeeping agrees with a higher-precision recomputation") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const PolyZ q1 = random_poly_of_degree(rng, 15);
    const PolyZ p1 = random_poly_of_degree(rng, 9);
    const PolyZ q2 = random_poly_of_degree(rng, 12);
    const PolyZ p2 = random_poly_of_degree(rng, 13);
    auto compute = [&](std::int64_t prec) {
      const LaurentZ x = LaurentZ::from_rational(p1, q1, prec);
      const LaurentZ y = LaurentZ::from_rational(p2, q2, prec);
      return tmcf::series_inv(x * y + x) * tmcf::series_pow(y, 3) + tmcf::derivative(x);
    };
    const LaurentZ low = compute(120);
    const LaurentZ high = compute(600);
    REQUIRE(low.horizon() > high.horizon());
    CHECK(tmcf::agree_from(low, high, low.horizon()));
  }
}

TEST_CASE("printing carries the horizon marker") {
  CHECK(mono(-1).to_string() == "z^-1");
  const LaurentZ g = tmcf::series_inv(LaurentZ::from_poly(P("z+1")), 3);
  CHECK(g.to_string() == "z^-1+z^-2+z^-3+O(z^-4)");
}

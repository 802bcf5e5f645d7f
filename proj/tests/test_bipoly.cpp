#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tmcf/biseries.hpp"
#include "tmcf/bipoly.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/tau_laurent.hpp"

using tmcf::BiPoly;
using tmcf::BiSeries;
using tmcf::PolyZ;
using tmcf::SquareMatrix;
using tmcf::SymMat2;
using tmcf::TauLaurent;

namespace {

BiPoly B(const char* s) { return BiPoly::parse(s); }
PolyZ P(const char* s) { return PolyZ::parse(s); }

BiPoly random_bipoly(std::mt19937_64& rng, std::int64_t max_deg, int density_percent = 50) {
  std::vector<tmcf::Exponents> support;
  for (std::int64_t i = 0; i <= max_deg; ++i) {
    for (std::int64_t j = 0; j <= max_deg; ++j) {
      if (static_cast<int>(rng() % 100) < density_percent) support.push_back({i, j});
    }
  }
  return BiPoly::from_support(support);
}

const BiPoly a = BiPoly::a();
const BiPoly b = BiPoly::b();
const BiPoly one = BiPoly::one();

// Quartic coefficients written out independently of the library.
BiPoly A1() { return a * b * (a + b) * (a.square() * b.square() + a.square() + b.square()); }
BiPoly A2() { return a.square() * b.square() * (a.square() * b.square() + a.square() + b.square()); }

}  // namespace

TEST_CASE("parse and print") {
  CHECK(B("a^2*b^2+b^2+1").to_string() == "a^2*b^2+b^2+1");
  CHECK(B("ab + a^2b") == B("a*b+a^2*b"));
  CHECK(B("a+a").is_zero());
  CHECK(BiPoly::parse_csv("2,2\n0,2\n# comment\n0,0\n") == B("a^2*b^2+b^2+1"));
  CHECK(BiPoly::parse_csv(B("a^3*b+b^7+a").to_csv()) == B("a^3*b+b^7+a"));
  CHECK_THROWS_AS(B("c"), tmcf::ParseError);
}

TEST_CASE("bipoly_mul examples") {
  CHECK((a + b) * (a + b) == a.square() + b.square());
  const SymMat2 m0{one, a, a, BiPoly{}};
  const SymMat2 m0s = tmcf::swapped(m0);
  const SymMat2 m1 = m0 * m0s * m0s * m0;
  CHECK(m1.m00 == B("a^2*b^2+b^2+1"));
  CHECK(m1.m01 == B("a^2*b+a*b^2+a"));
  CHECK(m1.m11 == B("a^2*b^2+a^2"));
  CHECK(m1.is_symmetric());
}

TEST_CASE("Kronecker product agrees with naive convolution") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 40; ++rep) {
    const BiPoly x = random_bipoly(rng, static_cast<std::int64_t>(rng() % 17));
    const BiPoly y = random_bipoly(rng, static_cast<std::int64_t>(rng() % 17));
    CHECK(x * y == tmcf::bipoly_mul_naive(x, y));
  }
  // Large dense operands exercise the packed path with a wide gap.
  const BiPoly x = random_bipoly(rng, 70);
  const BiPoly y = random_bipoly(rng, 40);
  CHECK(x * y == tmcf::bipoly_mul_naive(x, y));
}

TEST_CASE("ring laws, Frobenius, swap and subst homomorphisms") {
  std::mt19937_64 rng(2);
  const PolyZ pa = P("z^2+z");
  const PolyZ pb = P("z^3+1");
  for (int rep = 0; rep < 25; ++rep) {
    const BiPoly x = random_bipoly(rng, 9);
    const BiPoly y = random_bipoly(rng, 7, 30);
    const BiPoly w = random_bipoly(rng, 5, 70);
    CHECK(x * y == y * x);
    CHECK((x * y) * w == x * (y * w));
    CHECK(x * (y + w) == x * y + x * w);
    CHECK((x + y).square() == x.square() + y.square());
    CHECK(x.square() == x * x);
    CHECK((x * y).swapped() == x.swapped() * y.swapped());
    CHECK(x.swapped().swapped() == x);
    CHECK(tmcf::bipoly_subst(x * y, pa, pb) == tmcf::bipoly_subst(x, pa, pb) * tmcf::bipoly_subst(y, pa, pb));
    CHECK(tmcf::bipoly_subst(x + y, pa, pb) == tmcf::bipoly_subst(x, pa, pb) + tmcf::bipoly_subst(y, pa, pb));
  }
}

TEST_CASE("bipoly_swap examples") {
  CHECK(BiPoly::tau().swapped() == BiPoly::tau());
  const BiPoly z1 = B("a*b+b+1");
  CHECK(z1.swapped() == z1 + a + b);
  CHECK(z1.swapped() == B("a*b+a+1"));
}

TEST_CASE("bipoly_subst examples") {
  CHECK(tmcf::bipoly_subst(BiPoly::tau(), P("z+1"), P("z")).is_zero());
  CHECK(tmcf::bipoly_subst(a * b, P("z"), P("z+1")) == P("z^2+z"));
  const PolyZ za = P("z");
  const PolyZ zb = P("z+1");
  const PolyZ direct = za * za * zb * zb * (za * za * zb * zb + za * za + zb * zb);
  CHECK(tmcf::bipoly_subst(A2(), za, zb) == direct);
}

TEST_CASE("monomial division, flips, truncation") {
  const BiPoly x = B("a^3*b^2+a^2*b^5");
  CHECK(*x.divided_by_monomial(2, 2) == B("a+b^3"));
  CHECK_FALSE(x.divided_by_monomial(3, 0).has_value());
  CHECK(B("a^2*b+1").flipped(2, 1) == B("1+a^2*b"));
  CHECK(B("a").flipped(3, 2) == B("a^2*b^2"));
  CHECK(B("a^3+a*b+b^4+1").truncated_total(2) == B("a*b+1"));
}

TEST_CASE("bipoly_mat_det") {
  SquareMatrix<BiPoly> id(5);
  for (std::size_t i = 0; i < 5; ++i) id(i, i) = one;
  CHECK(tmcf::bipoly_mat_det(id) == one);

  SquareMatrix<BiPoly> t(2);
  t(0, 0) = A2();
  t(0, 1) = A1();
  t(1, 0) = A1();
  t(1, 1) = A2();
  const BiPoly det = tmcf::bipoly_mat_det(t);
  CHECK(det == A2().square() + A1().square());
  CHECK_FALSE(det.is_zero());

  CHECK_THROWS_AS(tmcf::bipoly_mat_det(SquareMatrix<BiPoly>(9)), tmcf::SizeLimit);
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      SquareMatrix<BiPoly> m(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m(r, c) = random_bipoly(rng, 3, rep == 0 ? 15 : 45);
      }
      CHECK(tmcf::bipoly_det_bareiss(m) == tmcf::bipoly_mat_det(m));
    }
  }
  // Rank-deficient: two equal rows.
  SquareMatrix<BiPoly> m(3);
  for (std::size_t c = 0; c < 3; ++c) {
    m(0, c) = random_bipoly(rng, 2);
    m(1, c) = m(0, c);
    m(2, c) = random_bipoly(rng, 2);
  }
  CHECK(tmcf::bipoly_det_bareiss(m).is_zero());
}

TEST_CASE("tau division") {
  std::mt19937_64 rng(5);
  const BiPoly tau = BiPoly::tau();
  for (int rep = 0; rep < 30; ++rep) {
    const BiPoly x = random_bipoly(rng, 8);
    auto [q, r] = tmcf::divrem_tau(x);
    CHECK(q * tau + r == x);
    CHECK(r.deg_a() <= 0);
    if (!x.is_zero()) {
      auto [e, rest] = tmcf::strip_tau(x * tmcf::pow(tau, 3));
      CHECK(e >= 3);
      CHECK_FALSE(tmcf::divrem_tau(rest).second.is_zero());
    }
  }
}

TEST_CASE("tau_laurent_arith") {
  const TauLaurent t = tmcf::tau_laurent_arith(TauLaurent::tau_power(-2), TauLaurent::tau_power(2), tmcf::TauOp::mul);
  CHECK(t.numerator() == one);
  CHECK(t.tau_exponent() == 0);

  const BiPoly ab = a * b;
  const TauLaurent alpha2(tmcf::pow(ab, 4), -2);
  CHECK(alpha2.numerator() == tmcf::pow(ab, 4));
  CHECK(alpha2.tau_exponent() == -2);

  // Numerators are always tau-free: tau^3 * x canonicalises to (x, 3).
  const TauLaurent packed(tmcf::pow(BiPoly::tau(), 3) * (a + one), 1);
  CHECK(packed.numerator() == a + one);
  CHECK(packed.tau_exponent() == 4);

  // alpha_2^4 + tau^2 alpha_2 + tau^{-8} (ab)^16 + a^4 b^4, cleared by tau^8.
  const TauLaurent rel = tmcf::pow(alpha2, 4) + TauLaurent::tau_power(2) * alpha2 +
                         TauLaurent(tmcf::pow(ab, 16), -8) + TauLaurent::from(tmcf::pow(ab, 4));
  CHECK(rel.is_zero());
  const BiPoly expanded = tmcf::pow(ab, 16) + tmcf::pow(BiPoly::tau(), 10) * tmcf::pow(ab, 4) +
                          tmcf::pow(ab, 16) + tmcf::pow(BiPoly::tau(), 8) * tmcf::pow(ab, 4) * BiPoly::tau().square();
  CHECK(expanded.is_zero());
}

TEST_CASE("biseries_div") {
  const std::int64_t cap = 12;
  const BiSeries x(B("a^3+a*b+b"), cap);
  CHECK(tmcf::biseries_div(x, BiSeries(one, cap)) == x);

  const BiSeries q = tmcf::biseries_div(BiSeries(a, cap), BiSeries(one + b, cap));
  BiPoly expected;
  for (std::int64_t j = 0; j < cap; ++j) expected += BiPoly::monomial(1, j);
  CHECK(q.poly() == expected);

  CHECK_THROWS_AS(tmcf::biseries_div(x, BiSeries(a + b, cap)), tmcf::InvalidArgument);

  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 20; ++rep) {
    const BiSeries num(random_bipoly(rng, 10), 20);
    BiPoly d = random_bipoly(rng, 10);
    if (!d.coefficient(0, 0)) d += one;
    const BiSeries den(d, 20);
    const BiSeries quotient = tmcf::biseries_div(num, den);
    CHECK(quotient * den == num);
  }
}

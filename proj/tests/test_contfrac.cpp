#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tmcf/contfrac.hpp"
#include "tmcf/errors.hpp"

using tmcf::ExpandStatus;
using tmcf::LaurentZ;
using tmcf::PolyZ;
using tmcf::PQStream;

namespace {

PolyZ P(const char* s) { return PolyZ::parse(s); }

PQStream random_stream(std::mt19937_64& rng, std::size_t length, std::size_t max_degree) {
  PQStream s;
  s.a0 = tmcf::testing::random_poly(rng, 2);
  for (std::size_t i = 0; i < length; ++i) {
    s.quotients.push_back(tmcf::testing::random_poly_of_degree(rng, 1 + rng() % max_degree));
  }
  return s;
}

// Backward evaluation x = a_i + 1/x as an exact fraction, independent of the
// matrix products.
std::pair<PolyZ, PolyZ> backward_fraction(const PQStream& s, std::size_t k) {
  PolyZ num = s[k];
  PolyZ den = PolyZ::one();
  for (std::size_t i = k; i-- > 0;) {
    PolyZ next = tmcf::testing::convolve(s[i], num) + den;
    den = num;
    num = next;
  }
  return {num, den};
}

// q * x agrees with p on every exponent >= from, checked bit by bit.
bool times_q_matches_p(const LaurentZ& x, const PolyZ& q, const PolyZ& p, std::int64_t from) {
  const PolyZ prod = tmcf::testing::convolve(q, x.body());
  const std::int64_t top = std::max<std::int64_t>(p.degree(), prod.degree() + x.low());
  for (std::int64_t e = top; e >= from; --e) {
    const std::int64_t idx = e - x.low();
    const bool lhs = idx >= 0 && prod.bit(static_cast<std::size_t>(idx));
    const bool rhs = e >= 0 && p.bit(static_cast<std::size_t>(e));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cf_expand of a polynomial") {
  const auto e = tmcf::cf_expand(LaurentZ::from_poly(P("z^3+z")), 10);
  CHECK(e.status == ExpandStatus::finite);
  CHECK(e.stream.a0 == P("z^3+z"));
  CHECK(e.stream.size() == 0);
}

TEST_CASE("cf_convergents examples") {
  PQStream s;
  s.quotients.push_back(P("z"));
  const auto c = tmcf::cf_convergents(s, 1);
  CHECK(c.p == PolyZ::one());
  CHECK(c.q == P("z"));
  CHECK_THROWS_AS(tmcf::cf_convergents(s, 2), tmcf::InvalidArgument);
}

TEST_CASE("convergents: degrees, determinant, coprimality, fraction") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const PQStream s = random_stream(rng, 1 + rng() % 40, 5);
    for (std::size_t k : {std::size_t{0}, s.size() / 2, s.size()}) {
      const auto c = tmcf::cf_convergents(s, k);
      const auto seq = tmcf::cf_convergents_sequential(s, k);
      CHECK(c.p == seq.p);
      CHECK(c.q == seq.q);
      CHECK(c.p_prev == seq.p_prev);
      CHECK(c.q_prev == seq.q_prev);
      CHECK(c.q.degree() == s.degree_sum(k));
      CHECK(c.p * c.q_prev + c.p_prev * c.q == PolyZ::one());
      CHECK(tmcf::gcd(c.p, c.q) == PolyZ::one());
      const auto [num, den] = backward_fraction(s, k);
      CHECK(num == c.p);
      CHECK(den == c.q);
    }
  }
}

TEST_CASE("Thue-Morse convergents at powers of four") {
  const PolyZ a = P("z");
  const PolyZ b = P("z+1");
  const PQStream s = tmcf::tm_prefix(1024, a, b).to_stream();
  for (unsigned l = 1; l <= 5; ++l) {
    const std::size_t k = std::size_t{1} << (2 * l);
    const auto c = tmcf::cf_convergents(s, k);
    CHECK(c.p == c.q_prev);
    const auto fast = tmcf::tm_convergent(a, b, l);
    CHECK(fast.p == c.p);
    CHECK(fast.q == c.q);
    CHECK(fast.p_prev == c.p_prev);
    CHECK(fast.q_prev == c.q_prev);
  }
}

TEST_CASE("cf_eval examples") {
  PQStream s;
  s.quotients.push_back(P("z"));
  const LaurentZ x = tmcf::cf_eval(s, 2);
  CHECK(x.coefficient(-1));
  CHECK_FALSE(x.coefficient(-2));
  CHECK(x.top() == -1);
  CHECK_THROWS_AS(tmcf::cf_eval(s, 3), tmcf::PrecisionExhausted);

  const PQStream tm = tmcf::tm_prefix(64, P("z"), P("z+1")).to_stream();
  const LaurentZ xi = tmcf::cf_eval(tm, 64);
  CHECK(xi.horizon() == -64);
  CHECK(xi.coefficient(-1));
  CHECK_FALSE(xi.coefficient(-2));
  CHECK(xi.coefficient(-3));
  // p_32 / q_32 is within 2^-(2 deg q_32 + 1) of the value.
  const auto c = tmcf::cf_convergents(tm, 32);
  CHECK(times_q_matches_p(xi, c.q, c.p, -64 + c.q.degree()));
}

TEST_CASE("cf_eval is independent of the convergent depth") {
  std::mt19937_64 rng(12);
  const PQStream s = random_stream(rng, 200, 4);
  const LaurentZ shallow = tmcf::cf_eval(s, 100);
  const LaurentZ deep = tmcf::cf_eval(s, 300);
  CHECK(tmcf::agree_from(shallow, deep, -100));
}

TEST_CASE("approximation quality |q_k x - p_k| = 1/|q_{k+1}|") {
  std::mt19937_64 rng(13);
  const PQStream s = random_stream(rng, 60, 3);
  const std::int64_t prec = 2 * s.degree_sum(60);
  const LaurentZ x = tmcf::cf_eval(s, prec);
  for (std::size_t k = 0; k + 1 < 40; ++k) {
    const auto c = tmcf::cf_convergents(s, k);
    const LaurentZ err = c.q * x + LaurentZ::from_poly(c.p);
    CHECK(err.top() == -s.degree_sum(k + 1));
  }
}

TEST_CASE("cf_expand inverts cf_eval") {
  const PQStream tm = tmcf::tm_prefix(64, P("z"), P("z+1")).to_stream();
  const auto e = tmcf::cf_expand(tmcf::cf_eval(tm, 128), 64);
  CHECK(e.status == ExpandStatus::complete);
  CHECK(e.stream == tm);

  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    const PQStream s = random_stream(rng, 80, 6);
    const std::int64_t prec = 40 + static_cast<std::int64_t>(rng() % 200);
    const auto ex = tmcf::cf_expand(tmcf::cf_eval(s, prec), 1000);
    CHECK(ex.status == ExpandStatus::horizon_exhausted);
    // Exactly the quotients with 2 deg q_n <= prec are reported, and they are right.
    std::size_t expected = 0;
    while (expected < s.size() && 2 * s.degree_sum(expected + 1) <= prec) ++expected;
    REQUIRE(ex.stream.size() == expected);
    CHECK(ex.stream.a0 == s.a0);
    for (std::size_t i = 0; i < expected; ++i) CHECK(ex.stream.quotients[i] == s.quotients[i]);
  }
}

TEST_CASE("cf_expand of exact rationals terminates") {
  // z^-1 + z^-3 = (z^2+1)/z^3 = [0; z, z, z].
  const LaurentZ x(P("z^2+1"), -3, LaurentZ::kExactHorizon);
  const auto e = tmcf::cf_expand(x, 10);
  CHECK(e.status == ExpandStatus::finite);
  CHECK(e.stream.a0.is_zero());
  CHECK(e.stream.quotients == std::vector<PolyZ>{P("z"), P("z"), P("z")});

  std::mt19937_64 rng(15);
  const PQStream s = random_stream(rng, 12, 3);
  const auto c = tmcf::cf_convergents(s, 12);
  // A truncated rational cannot signal termination; it stops at the horizon.
  const auto ex = tmcf::cf_expand(LaurentZ::from_rational(c.p, c.q, 4 * c.q.degree()), 100);
  CHECK(ex.status == ExpandStatus::horizon_exhausted);
  CHECK(ex.stream.size() == 12);
  CHECK_THROWS_AS(tmcf::cf_expand(LaurentZ::monomial(3, 1), 1), tmcf::PrecisionExhausted);
}

TEST_CASE("tm_prefix") {
  const auto w = tmcf::tm_prefix(16, P("z"), P("z+1"));
  CHECK(w.to_string() == "abbabaabbaababba");
  CHECK(tmcf::tm_prefix(8, P("z"), P("z+1")).to_string() == "abbabaab");
  const auto big = tmcf::tm_prefix(std::size_t{1} << 20, P("z"), P("z+1"));
  for (unsigned l = 0; l <= 6; ++l) CHECK(big.is_palindrome(std::size_t{1} << (2 * l)));
  CHECK_FALSE(big.is_palindrome(2));
  CHECK_FALSE(big.is_palindrome(8));
  bool all = true;
  for (std::uint64_t k = 0; k < (1u << 20); ++k) {
    all = all && big.letter(k) == ((std::popcount(k) & 1) != 0) && big.letter(k) == tmcf::tm_letter(k);
  }
  CHECK(all);
}

TEST_CASE("spectrum_window") {
  const PQStream tm = tmcf::tm_prefix(200, P("z^2"), P("z^3+1")).to_stream();
  const auto sp = tmcf::spectrum_window(tm, 200);
  CHECK(sp.max_degree == 3);
  CHECK(sp.histogram.size() == 2);
  CHECK(sp.histogram.at(2) + sp.histogram.at(3) == 200);
  CHECK(sp.lagrange_log2() == -3);

  PQStream constant;
  for (int i = 0; i < 30; ++i) constant.quotients.push_back(P("z"));
  const auto sc = tmcf::spectrum_window(constant, 30);
  CHECK(sc.histogram == std::map<std::int64_t, std::size_t>{{1, 30}});
  CHECK_THROWS_AS(tmcf::spectrum_window(constant, 31), tmcf::InvalidArgument);
}

TEST_CASE("stream JSON") {
  const PQStream tm = tmcf::tm_prefix(10, P("z^2+1"), P("z")).to_stream();
  const std::string json = tmcf::stream_to_json(tm);
  CHECK(json.rfind("[\"0\",\"z^2+1\",\"z\"", 0) == 0);
  CHECK(tmcf::stream_from_json(json) == tm);
  CHECK_THROWS_AS(tmcf::stream_from_json("[\"0\",\"1\"]"), tmcf::ParseError);
  CHECK_THROWS_AS(tmcf::stream_from_json("{"), tmcf::ParseError);
}

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "tmcf/analysis.hpp"
#include "tmcf/bipoly.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/identities.hpp"

using tmcf::Certificate;
using tmcf::LaurentZ;
using tmcf::PolyZ;

namespace {

PolyZ P(const char* s) { return PolyZ::parse(s); }

void require_pass(const Certificate& c) {
  INFO(c.name);
  for (const auto& r : c.residuals) {
    INFO(r.label << ": " << r.summary);
    CHECK(r.zero);
    CHECK(r.orders_agree);
  }
  CHECK(c.pass);
}

const std::array<std::array<const char*, 2>, 5> kPairs = {{
    {"z", "z+1"}, {"z+1", "z"}, {"z^2", "z"}, {"z^2", "z^3+1"}, {"z^4+z", "z^3+1"}}};

// The quartic evaluated at the exact fraction p/q, cleared of denominators.
PolyZ quartic_numerator(const tmcf::QuarticInstance& inst, const PolyZ& p, const PolyZ& q) {
  PolyZ sum;
  for (int j = 0; j <= 4; ++j) {
    PolyZ term = inst.A[static_cast<std::size_t>(j)];
    for (int i = 0; i < j; ++i) term *= p;
    for (int i = j; i < 4; ++i) term *= q;
    sum += term;
  }
  return sum;
}

bool baum_sweet(std::size_t n) {
  if (n == 0) return true;
  while (n != 0) {
    if ((n & 1) == 0) {
      std::size_t run = 0;
      while ((n & 1) == 0) {
        ++run;
        n >>= 1;
      }
      if (run % 2 == 1) return false;
    } else {
      n >>= 1;
    }
  }
  return true;
}

// c_n of the J-fraction by counting weighted Motzkin paths mod 2: a level
// step at height h carries weight u_{h+1}, up and down steps weight 1.
std::vector<bool> motzkin_coeffs(const std::vector<bool>& u, std::size_t n) {
  std::vector<bool> out;
  std::vector<bool> cur(n + 2, false);
  cur[0] = true;
  out.push_back(true);
  for (std::size_t step = 1; step <= n; ++step) {
    std::vector<bool> next(n + 2, false);
    for (std::size_t h = 0; h <= n; ++h) {
      if (!cur[h]) continue;
      if (u[h]) next[h] = !next[h];
      next[h + 1] = !next[h + 1];
      if (h > 0) next[h - 1] = !next[h - 1];
    }
    cur = next;
    out.push_back(cur[0]);
  }
  return out;
}

// Determinant over GF(2) equals the permanent: count permutations mod 2.
bool leibniz_det(const std::vector<std::vector<bool>>& m) {
  std::vector<std::size_t> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  bool acc = false;
  do {
    bool term = true;
    for (std::size_t i = 0; i < m.size() && term; ++i) term = m[i][perm[i]];
    acc ^= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace

TEST_CASE("make_instance rejects bad alphabets") {
  CHECK_THROWS_AS(tmcf::make_instance(P("z"), P("z")), tmcf::InvalidArgument);
  CHECK_THROWS_AS(tmcf::make_instance(P("1"), P("z")), tmcf::InvalidArgument);
  CHECK_THROWS_AS(tmcf::make_instance(P("z"), P("0")), tmcf::InvalidArgument);
  const auto inst = tmcf::make_instance(P("z^2"), P("z^3+1"));
  CHECK(inst.d == 5);
  CHECK(inst.A[1] == inst.A[3]);
}

TEST_CASE("quartic vanishes on the series for the five pairs") {
  for (const auto& pr : kPairs) {
    require_pass(tmcf::verify_quartic_at_series(P(pr[0]), P(pr[1]), 2048));
  }
}

TEST_CASE("quartic vanishing through exact convergents") {
  // Independent of the series layer: the numerator at p_k/q_k must be small
  // compared with q_k^4, i.e. f(p/q) -> 0.
  for (const auto& pr : kPairs) {
    const auto inst = tmcf::make_instance(P(pr[0]), P(pr[1]));
    const auto cv = tmcf::tm_convergent(inst.a, inst.b, 4);
    const PolyZ N = quartic_numerator(inst, cv.p, cv.q);
    INFO(pr[0] << ", " << pr[1]);
    CHECK(N.degree() - 4 * cv.q.degree() < -cv.q.degree());
  }
}

TEST_CASE("size of epsilon at k = 4^l") {
  // First order: eps = f(p/q) - f(xi) ~ f'(xi) (p/q - xi) with f'(xi) of size
  // |A_1| and |p/q - xi| = 1/(|q_k| |q_{k+1}|); a_{k+1} = b since t_{4^l} = 1.
  for (const auto& pr : kPairs) {
    const auto inst = tmcf::make_instance(P(pr[0]), P(pr[1]));
    const Certificate c = tmcf::epsilon_bound_check(inst.a, inst.b, 2048);
    INFO(c.name);
    CHECK(std::stoll(c.params.at("levels_checked")) >= 2);
    for (unsigned l = 1; l <= 3; ++l) {
      const std::string key = "log2_eps[l=" + std::to_string(l) + "]";
      if (!c.params.contains(key)) continue;
      const auto cv = tmcf::tm_convergent(inst.a, inst.b, l);
      const std::int64_t expected = inst.A[1].degree() - 2 * cv.q.degree() - inst.b.degree();
      CHECK(std::stoll(c.params.at(key)) == expected);
      const PolyZ N = quartic_numerator(inst, cv.p, cv.q);
      CHECK(N.degree() - 4 * cv.q.degree() == expected);
    }
  }
}

TEST_CASE("quartic check detects a wrong coefficient") {
  const auto inst = tmcf::make_instance(P("z"), P("z+1"));
  std::vector<PolyZ> coeffs(inst.A.begin(), inst.A.end());
  coeffs[2] += PolyZ::one();
  const Certificate c = tmcf::verify_relation_at_series("perturbed", inst.a, inst.b, coeffs, 512);
  CHECK_FALSE(c.pass);
}

TEST_CASE("riccati equation and square criterion") {
  for (const auto& pr : kPairs) require_pass(tmcf::riccati_check(P(pr[0]), P(pr[1]), 2048));
}

TEST_CASE("hyperquadratic toeplitz determinants") {
  for (int s = 2; s <= 4; ++s) require_pass(tmcf::hyperquadratic_toeplitz(s));
  CHECK_THROWS_AS(tmcf::hyperquadratic_toeplitz(5), tmcf::SizeLimit);
  CHECK_THROWS_AS(tmcf::hyperquadratic_toeplitz(1), tmcf::SizeLimit);
}

TEST_CASE("toeplitz determinant for s = 2 and s = 3 by two routes") {
  const auto A = tmcf::quartic_coefficients();
  auto entry = [&](std::size_t r, std::size_t c) {
    const long idx = 2 + static_cast<long>(r) - static_cast<long>(c);
    return (idx < 0 || idx > 4) ? tmcf::BiPoly() : A[static_cast<std::size_t>(idx)];
  };
  tmcf::SquareMatrix<tmcf::BiPoly> m2(2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m2(r, c) = entry(r, c);
  CHECK(tmcf::bipoly_mat_det(m2) == A[2].square() + A[1].square());

  tmcf::SquareMatrix<tmcf::BiPoly> m6(6);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) m6(r, c) = entry(r, c);
  const tmcf::BiPoly det = tmcf::bipoly_mat_det(m6);
  CHECK(det == tmcf::bipoly_det_bareiss(m6));
  CHECK(det.coefficient(24, 24));
  CHECK(det.deg_a() == 24);
}

TEST_CASE("jacobi coefficients of omega") {
  const auto u = tmcf::omega_sequence(16);
  const std::vector<bool> start = {true, false, false, true, false, true, true, false};
  CHECK(std::vector<bool>(u.begin(), u.begin() + 8) == start);

  const std::size_t n = 200;
  const auto u_long = tmcf::omega_sequence(n + 2);
  const auto j = tmcf::jacobi_coeffs(u_long, n);
  CHECK(j.depth_verified);
  CHECK(j.c.bit(0));
  const auto oracle = motzkin_coeffs(u_long, n);
  for (std::size_t i = 0; i <= n; ++i) {
    INFO(i);
    CHECK(j.c.bit(i) == oracle[i]);
  }
  CHECK_THROWS(tmcf::jacobi_coeffs(tmcf::omega_sequence(4), 64));
}

TEST_CASE("hankel determinant against permutation expansion") {
  const auto j = tmcf::jacobi_coeffs(tmcf::omega_sequence(32), 40);
  for (std::size_t n = 1; n <= 7; ++n) {
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m[r][c] = j.c.bit(r + c);
    CHECK(tmcf::hankel_determinant(j.c, n) == leibniz_det(m));
  }
  // A sequence with a vanishing Hankel determinant: all ones gives H_2 = 0.
  PolyZ ones;
  for (std::size_t i = 0; i < 8; ++i) ones.set_bit(i);
  CHECK(tmcf::hankel_determinant(ones, 1));
  CHECK_FALSE(tmcf::hankel_determinant(ones, 2));
}

TEST_CASE("hankel suite for omega") {
  const std::size_t apw = 4096;
  const auto j = tmcf::jacobi_coeffs(tmcf::omega_sequence(apw + 8), 2 * apw + 2);
  require_pass(tmcf::hankel_suite(j, 64, apw));
  const auto short_j = tmcf::jacobi_coeffs(tmcf::omega_sequence(64), 100);
  CHECK_THROWS_AS(tmcf::hankel_suite(short_j, 64, apw), tmcf::PrecisionExhausted);
}

TEST_CASE("omega quartic") { require_pass(tmcf::omega_quartic_check(512)); }

TEST_CASE("mahler reference root") {
  const LaurentZ x = tmcf::reference_root(tmcf::ReferenceRoot::mahler, 1024);
  for (std::int64_t e = -1; e >= -1024; --e) {
    const std::int64_t m = -e;
    const bool power_of_four = (m & (m - 1)) == 0 && (std::countr_zero(static_cast<std::uint64_t>(m)) % 2 == 0);
    INFO(e);
    CHECK(x.coefficient(e) == power_of_four);
  }
  require_pass(tmcf::reference_root_check(tmcf::ReferenceRoot::mahler, 1024));
}

TEST_CASE("baum-sweet reference root") {
  const LaurentZ x = tmcf::reference_root(tmcf::ReferenceRoot::baumsweet, 1024);
  for (std::int64_t n = 0; n <= 1024; ++n) {
    INFO(n);
    CHECK(x.coefficient(-n) == baum_sweet(static_cast<std::size_t>(n)));
  }
  require_pass(tmcf::reference_root_check(tmcf::ReferenceRoot::baumsweet, 1024));
}

TEST_CASE("reference root continued fraction spectra") {
  const LaurentZ bs = tmcf::reference_root(tmcf::ReferenceRoot::baumsweet, 4096);
  const auto e = tmcf::cf_expand(bs, 500);
  REQUIRE(e.stream.size() == 500);
  CHECK(tmcf::spectrum_window(e.stream, 500).max_degree <= 2);

  // The Mahler root has unbounded quotients: window maxima keep growing.
  const LaurentZ m = tmcf::reference_root(tmcf::ReferenceRoot::mahler, 4096);
  const auto em = tmcf::cf_expand(m, 200);
  REQUIRE(em.stream.size() >= 40);
  const auto w10 = tmcf::spectrum_window(em.stream, 10).max_degree;
  const auto w20 = tmcf::spectrum_window(em.stream, 20).max_degree;
  const auto w40 = tmcf::spectrum_window(em.stream, 40).max_degree;
  CHECK(w10 < w20);
  CHECK(w20 < w40);
}

TEST_CASE("approximation records") {
  for (const auto& pr : {kPairs[0], kPairs[2], kPairs[3]}) {
    const auto ex = tmcf::approx_experiment(P(pr[0]), P(pr[1]), 5);
    require_pass(ex.certificate);
    REQUIRE(ex.records.size() == 5);
    for (const auto& r : ex.records) {
      // ||q_k xi|| = 1/|q_{k+1}|, and a_{k+1} = b at k = 4^l.
      CHECK(r.norm_q_xi.log2 == -(r.q.degree() + P(pr[1]).degree()));
      CHECK(std::max(r.norm_q_xi.log2, r.norm_q_xi2.log2) == -r.q.degree());
    }
  }
  CHECK_THROWS_AS(tmcf::approx_experiment(P("z"), P("z+1"), 7), tmcf::InvalidArgument);
}

TEST_CASE("vanishing search against exhaustive search") {
  const LaurentZ xi = tmcf::xi_series(P("z"), P("z+1"), 256);
  const LaurentZ xi2 = tmcf::series_square(xi);
  for (std::int64_t D = 0; D <= 2; ++D) {
    const unsigned w = static_cast<unsigned>(D + 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << (3 * w)); ++bits) {
      const PolyZ b0 = PolyZ::from_mask(bits & ((1u << w) - 1));
      const PolyZ b1 = PolyZ::from_mask((bits >> w) & ((1u << w) - 1));
      const PolyZ b2 = PolyZ::from_mask((bits >> (2 * w)) & ((1u << w) - 1));
      const LaurentZ v = LaurentZ::from_poly(b0) + b1 * xi + b2 * xi2;
      REQUIRE_FALSE(v.is_zero());
      best = std::max(best, -v.top());
    }
    INFO(D);
    CHECK(tmcf::vanishing_search(xi, D).order == best);
  }
}

TEST_CASE("vanishing order for (z, z+1)") {
  const LaurentZ xi = tmcf::xi_series(P("z"), P("z+1"), 1024);
  for (std::int64_t D : {4, 8, 16, 64}) CHECK(tmcf::vanishing_search(xi, D).order >= 3 * D);
}

#include "tmcf/analysis.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tmcf/bitmatrix.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/identities.hpp"

namespace tmcf {

namespace {

std::string pair_label(const PolyZ& a, const PolyZ& b) { return "a=" + a.to_string() + ",b=" + b.to_string(); }

void require_precision(std::int64_t precision, std::int64_t minimum, const char* what) {
  if (precision < minimum) {
    throw InvalidArgument(std::string(what) + ": precision must be at least " + std::to_string(minimum));
  }
}

// Inverse of a power series in x with constant term 1, modulo x^m.
PolyZ inverse_mod_x(const PolyZ& f, std::size_t m) {
  if (!f.bit(0)) throw InvalidArgument("inverse_mod_x: constant term is zero");
  PolyZ y = PolyZ::one();
  std::size_t prec = 1;
  while (prec < m) {
    prec = std::min(2 * prec, m);
    y = (f.truncated(prec) * y.square()).truncated(prec);
  }
  return y.truncated(m);
}

// s(x) with x = 1/z, known modulo x^{precision+1}, as a series in z.
LaurentZ from_x_series(const PolyZ& s, std::int64_t precision) {
  const auto len = static_cast<std::size_t>(precision + 1);
  return LaurentZ(s.truncated(len).reversed(len), -precision, -precision);
}

LaurentZ lift(const PolyZ& p) { return LaurentZ::from_poly(p); }

}  // namespace

std::int64_t QuarticInstance::max_coefficient_degree() const {
  std::int64_t m = 0;
  for (const auto& c : A) m = std::max(m, c.degree());
  return m;
}

QuarticInstance make_instance(const PolyZ& a, const PolyZ& b) {
  if (a.degree() < 1 || b.degree() < 1) throw InvalidArgument("invalid alphabet: a and b must be nonconstant");
  if (a == b) throw InvalidArgument("invalid alphabet: a and b must differ");
  QuarticInstance inst{a, b, {}, a.degree() + b.degree()};
  const auto coeffs = quartic_coefficients();
  for (std::size_t j = 0; j < 5; ++j) inst.A[j] = bipoly_subst(coeffs[j], a, b);
  return inst;
}

PQStream tm_stream_for_precision(const PolyZ& a, const PolyZ& b, std::int64_t precision) {
  std::size_t len = 0;
  std::int64_t deg = 0;
  while (2 * deg < precision || len == 0) {
    deg += tm_letter(len) ? b.degree() : a.degree();
    ++len;
  }
  return tm_prefix(len, a, b).to_stream();
}

LaurentZ xi_series(const PolyZ& a, const PolyZ& b, std::int64_t precision) {
  return cf_eval(tm_stream_for_precision(a, b, precision), precision);
}

std::int64_t add_relation_residual(CertificateBuilder& c, const std::string& label, const LaurentZ& x,
                                   const std::vector<PolyZ>& coeffs) {
  std::vector<LaurentZ> powers{lift(PolyZ::one()), x};
  for (std::size_t j = 2; j < coeffs.size(); ++j) {
    powers.push_back(j % 2 == 0 ? series_square(powers[j / 2]) : powers[j - 1] * x);
  }
  std::vector<std::vector<LaurentZ>> terms;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    terms.push_back({lift(coeffs[j]), powers[j]});
  }
  const LaurentZ fwd = evaluate(terms, Order::forward);
  c.residual(label, fwd, evaluate(terms, Order::permuted));
  c.param("trusted_from_exponent", fwd.horizon());
  return fwd.horizon();
}

Certificate verify_relation_at_series(const std::string& name, const PolyZ& a, const PolyZ& b,
                                      const std::vector<PolyZ>& coeffs, std::int64_t precision) {
  CertificateBuilder c(name);
  c.param("a", a.to_string()).param("b", b.to_string()).param("precision", precision);
  const LaurentZ xi = xi_series(a, b, precision);
  add_relation_residual(c, "sum_j B_j xi^j", xi, coeffs);
  return c.finish();
}

Certificate verify_quartic_at_series(const PolyZ& a, const PolyZ& b, std::int64_t precision) {
  require_precision(precision, 64, "verify_quartic_at_series");
  const QuarticInstance inst = make_instance(a, b);
  CertificateBuilder c("quartic_at_series[" + pair_label(a, b) + "]");
  c.param("a", a.to_string()).param("b", b.to_string()).param("precision", precision);

  const PQStream stream = tm_stream_for_precision(a, b, precision);
  const LaurentZ xi = cf_eval(stream, precision);
  const std::int64_t trusted = add_relation_residual(c, "A_4 xi^4 + A_3 xi^3 + A_2 xi^2 + A_1 xi + A_0", xi,
                                                     {inst.A.begin(), inst.A.end()});
  // The residual must be trusted at least down to the fixed margin.
  const std::int64_t margin = precision - 4 * inst.max_coefficient_degree() - 8;
  c.param("margin_exponent", -margin);
  c.check("trusted range reaches the margin", trusted <= -margin,
          "trusted from z^" + std::to_string(trusted) + ", margin z^" + std::to_string(-margin));

  return c.finish();
}

Certificate epsilon_bound_check(const PolyZ& a, const PolyZ& b, std::int64_t precision) {
  require_precision(precision, 64, "epsilon_bound_check");
  const QuarticInstance inst = make_instance(a, b);
  CertificateBuilder c("epsilon_bound[" + pair_label(a, b) + "]");
  c.param("a", a.to_string()).param("b", b.to_string()).param("precision", precision);
  const std::size_t depth = tm_stream_for_precision(a, b, precision).size();

  // epsilon_{4^l} = N / q^4 with N = sum_j A_j p^j q^(4-j), all exact.
  std::int64_t checked = 0;
  for (unsigned l = 1; (std::size_t{1} << (2 * l)) <= depth; ++l) {
    const ConvergentPair cv = tm_convergent(a, b, l);
    const std::int64_t n_l = std::int64_t{1} << (2 * l - 1);
    const PolyZ q2 = cv.q.square();
    const PolyZ p2 = cv.p.square();
    const PolyZ N = inst.A[4] * p2.square() + inst.A[3] * p2 * cv.p * cv.q + inst.A[2] * p2 * q2 +
                    inst.A[1] * cv.p * q2 * cv.q + inst.A[0] * q2.square();
    const std::int64_t log_eps = N.is_zero() ? kMinusInfinity : N.degree() - 4 * cv.q.degree();
    const std::int64_t stated = -2 * cv.q.degree();
    const std::string tag = "l=" + std::to_string(l);
    c.check("deg q_{4^l} = d n_l (" + tag + ")", cv.q.degree() == inst.d * n_l);
    c.param("log2_eps[" + tag + "]", log_eps);
    c.param("log2_bound_with_ab4[" + tag + "]", stated + 4 * inst.d);
    c.check("|eps_{4^l}| <= |ab|^4 |q_{4^l}|^-2 (" + tag + ")", log_eps <= stated + 4 * inst.d);
    c.check("|eps_{4^l}| <= |q_{4^l}|^-2 (" + tag + ")", log_eps <= stated,
            "log2 |eps| = " + std::to_string(log_eps) + ", bound " + std::to_string(stated));
    ++checked;
  }
  c.param("levels_checked", checked);
  return c.finish();
}

Certificate riccati_check(const PolyZ& a, const PolyZ& b, std::int64_t precision) {
  require_precision(precision, 64, "riccati_check");
  const QuarticInstance inst = make_instance(a, b);
  CertificateBuilder c("riccati[" + pair_label(a, b) + "]");
  c.param("a", a.to_string()).param("b", b.to_string()).param("precision", precision);
  const LaurentZ xi = xi_series(a, b, precision);
  const PolyZ ab = a * b;
  const PolyZ coeff = ab * (a + b);
  const PolyZ dab = derivative(ab);
  const LaurentZ one = lift(PolyZ::one());
  const LaurentZ xi2 = series_square(xi);

  const LaurentZ fwd = derivative(lift(coeff) * xi) + lift(dab) * (one + xi2);
  const LaurentZ perm = (xi2 + one) * lift(dab) + derivative(xi * lift(coeff));
  c.residual("[ab(a+b) xi]' + (ab)'(1 + xi^2)", fwd, perm);
  c.param("trusted_from_exponent", fwd.horizon());
  c.residual("(A_0)' + (A_4)'", derivative(inst.A[0]) + derivative(inst.A[4]),
             derivative(inst.A[4]) + derivative(inst.A[0]));

  const LaurentZ y = lift(coeff) * xi + lift(ab) * (one + xi2);
  bool square = true;
  try {
    (void)series_sqrt(y);
  } catch (const NotASquare&) {
    square = false;
  }
  c.check("ab(a+b) xi + ab(1 + xi^2) has even support", square);
  return c.finish();
}

Certificate hyperquadratic_toeplitz(int s) {
  if (s < 2 || s > 4) throw SizeLimit("hyperquadratic_toeplitz: s must lie in 2..4");
  CertificateBuilder c("hyperquadratic[s=" + std::to_string(s) + "]");
  const auto A = quartic_coefficients();
  const std::size_t n = (std::size_t{1} << s) - 2;
  const auto top = static_cast<std::int64_t>(4 * n);
  c.param("s", s).param("size", static_cast<std::int64_t>(n));

  SquareMatrix<BiPoly> m(n), mt(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t col = 0; col < n; ++col) {
      const auto idx = 2 + static_cast<std::int64_t>(r) - static_cast<std::int64_t>(col);
      if (idx >= 0 && idx <= 4) {
        m(r, col) = A[static_cast<std::size_t>(idx)];
        mt(col, r) = A[static_cast<std::size_t>(idx)];
      }
    }
  }
  // Cofactor expansion where it is allowed, cross-checked by Bareiss; beyond
  // that Bareiss on M and on its transpose.
  const BiPoly det = n <= kCofactorLimit ? bipoly_mat_det(m) : bipoly_det_bareiss(m);
  const BiPoly det2 = bipoly_det_bareiss(mt);
  c.residual("det computed two ways", det + det2, det2 + det);
  c.check("det(M_s) != 0", !det.is_zero(), std::to_string(det.term_count()) + " terms");
  c.check("monomial (a^4 b^4)^(2^s-2) present", det.coefficient(top, top));
  c.check("deg_a, deg_b <= 4(2^s-2)", det.deg_a() <= top && det.deg_b() <= top);

  bool only_a2 = true;
  bool small_terms = true;
  for (std::size_t j = 0; j < 5; ++j) {
    for (const auto& e : A[j].support()) {
      if (e.a == 4 && e.b == 4) {
        only_a2 = only_a2 && j == 2;
      } else if (e.a > 4 || e.b > 4 || e.a + e.b > 7) {
        small_terms = false;
      }
    }
  }
  c.check("a^4 b^4 occurs only in A_2", only_a2 && A[2].coefficient(4, 4));
  c.check("other monomials a^i b^j have i, j <= 4 and i + j <= 7", small_terms);
  return c.finish();
}

std::vector<bool> omega_sequence(std::size_t count) {
  std::vector<bool> u(count);
  for (std::size_t i = 0; i < count; ++i) u[i] = !tm_letter(i);
  return u;
}

namespace {

// f_i = 1 + u_i x + x^2 / f_{i+1} kept as a fraction num/den, with f_{depth+1} = 1.
PolyZ jacobi_truncated(const std::vector<bool>& u, std::size_t depth, std::size_t n) {
  PolyZ num = PolyZ::one();
  PolyZ den = PolyZ::one();
  for (std::size_t i = depth; i >= 1; --i) {
    PolyZ next = num + den.shifted(2);
    if (u[i - 1]) next += num.shifted(1);
    den = std::move(num);
    num = std::move(next);
  }
  // J = 1/f_1 = den/num.
  return (den * inverse_mod_x(num, n + 1)).truncated(n + 1);
}

}  // namespace

JacobiCF jacobi_coeffs(const std::vector<bool>& u, std::size_t n) {
  const std::size_t depth = n / 2 + 2;
  if (u.size() < depth + 1) {
    throw InvalidArgument("jacobi_coeffs: need " + std::to_string(depth + 1) + " terms of u");
  }
  JacobiCF out;
  out.u = u;
  out.n = n;
  out.c = jacobi_truncated(u, depth, n);
  out.depth_verified = jacobi_truncated(u, depth + 1, n) == out.c;
  return out;
}

bool hankel_determinant(const PolyZ& c, std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, c.bit(i + j));
  }
  return determinant(std::move(m));
}

Certificate hankel_suite(const JacobiCF& j, std::size_t n_max, std::size_t apwenian_max) {
  if (n_max == 0 || 2 * n_max - 2 > j.n || 2 * apwenian_max + 2 > j.n) {
    throw PrecisionExhausted("hankel_suite: insufficient coefficients (have c_0..c_" + std::to_string(j.n) + ")");
  }
  CertificateBuilder c("hankel");
  c.param("n_max", static_cast<std::int64_t>(n_max)).param("apwenian_max", static_cast<std::int64_t>(apwenian_max));
  c.check("c_0 = 1", j.c.bit(0));
  c.check("coefficients stable under a deeper truncation", j.depth_verified);
  std::size_t bad_h = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    // The product formula gives v_0^n v_1^(n-1) ... v_(n-1) = 1 over GF(2).
    if (!hankel_determinant(j.c, n)) ++bad_h;
  }
  c.check("H_n = 1 for 1 <= n <= n_max", bad_h == 0, std::to_string(bad_h) + " determinants differ from 1");
  std::size_t bad_a = 0;
  for (std::size_t n = 0; n <= apwenian_max; ++n) {
    if (j.c.bit(n) != (j.c.bit(2 * n + 1) != j.c.bit(2 * n + 2))) ++bad_a;
  }
  c.check("c_n = c_(2n+1) + c_(2n+2) for n <= apwenian_max", bad_a == 0, std::to_string(bad_a) + " violations");
  return c.finish();
}

std::array<PolyZ, 5> omega_coefficients() {
  return {PolyZ::parse("x^5+x^3+x^2+x+1"), PolyZ::parse("x^6+x^5+x^4+x^3+x^2+x"), PolyZ::parse("x^6+1"),
          PolyZ::parse("x^8+x^7+x^6+x^5+x^4+x^3"), PolyZ::parse("x^10+x^9+x^8+x^7+x^5+x^4")};
}

Certificate omega_quartic_check(std::int64_t precision) {
  require_precision(precision, 32, "omega_quartic_check");
  CertificateBuilder c("omega_quartic");
  c.param("precision", precision);
  const auto n = static_cast<std::size_t>(precision);
  const JacobiCF j = jacobi_coeffs(omega_sequence(n / 2 + 3), n);
  const auto g = omega_coefficients();

  // Every product is exact modulo x^(n+1).
  const PolyZ w = j.c;
  const PolyZ w2 = w.square().truncated(n + 1);
  const PolyZ w3 = (w2 * w).truncated(n + 1);
  const PolyZ w4 = w2.square().truncated(n + 1);
  const std::vector<std::vector<PolyZ>> terms{{g[4], w4}, {g[3], w3}, {g[2], w2}, {g[1], w}, {g[0]}};
  c.residual("g_4 w^4 + g_3 w^3 + g_2 w^2 + g_1 w + g_0 mod x^(prec+1)",
             evaluate(terms, Order::forward).truncated(n + 1), evaluate(terms, Order::permuted).truncated(n + 1));

  // omega(1/z)/z = sum c_n z^(-n-1) against the continued fraction at a = z+1, b = z.
  const PolyZ a = PolyZ::parse("z+1");
  const PolyZ b = PolyZ::parse("z");
  const LaurentZ xi = xi_series(a, b, precision);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.bit(i) != xi.coefficient(-static_cast<std::int64_t>(i) - 1)) ++mismatches;
  }
  c.check("omega(1/z)/z agrees with xi_{z+1,z} on " + std::to_string(n) + " coefficients", mismatches == 0,
          std::to_string(mismatches) + " mismatches");

  // Sum_j A_j(1/x) x^j omega^j = 0, so g_j must be proportional to x^j x^D A_j(1/x).
  const QuarticInstance inst = make_instance(a, b);
  const auto D = static_cast<std::size_t>(inst.max_coefficient_degree());
  std::array<PolyZ, 5> h;
  for (std::size_t i = 0; i < 5; ++i) h[i] = inst.A[i].reversed(D + 1).shifted(static_cast<std::int64_t>(i));
  bool proportional = true;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t k = i + 1; k < 5; ++k) proportional = proportional && g[i] * h[k] == g[k] * h[i];
  }
  c.check("g_j proportional to the reversed A_j at a=z+1, b=z", proportional);
  return c.finish();
}

LaurentZ reference_root(ReferenceRoot which, std::int64_t precision) {
  require_precision(precision, 16, "reference_root");
  const auto len = static_cast<std::size_t>(precision + 1);
  PolyZ s;  // series in x = 1/z
  if (which == ReferenceRoot::mahler) {
    for (std::size_t e = 1; e < len; e *= 4) s.set_bit(e);
  } else {
    // X = 1 + Y, |Y| < 1: z(Y + Y^2 + Y^3) = 1 + Y, i.e. Y = x(1 + Y) + Y^2 + Y^3.
    // The map contracts by |x|, so iterating from 0 reaches the fixed point.
    PolyZ y;
    for (std::size_t it = 0; it <= len; ++it) {
      const PolyZ y2 = y.square().truncated(len);
      PolyZ next = (PolyZ::one() + y).shifted(1) + y2 + y2 * y;
      next = next.truncated(len);
      if (next == y) break;
      y = std::move(next);
    }
    s = PolyZ::one() + y;
  }
  return from_x_series(s, precision);
}

Certificate reference_root_check(ReferenceRoot which, std::int64_t precision) {
  const bool mahler = which == ReferenceRoot::mahler;
  CertificateBuilder c(mahler ? "refroot[mahler]" : "refroot[baumsweet]");
  c.param("precision", precision);
  const LaurentZ x = reference_root(which, precision);
  const PolyZ z = PolyZ::z();
  if (mahler) {
    add_relation_residual(c, "z X^4 + z X + 1", x, {PolyZ::one(), z, PolyZ(), PolyZ(), z});
  } else {
    add_relation_residual(c, "z X^3 + X + z", x, {z, PolyZ::one(), PolyZ(), z});
    c.check("|X| = 1", x.top() == 0);
  }
  return c.finish();
}

VanishingSearch vanishing_search(const LaurentZ& xi, std::int64_t degree_bound) {
  if (degree_bound < 0) throw InvalidArgument("vanishing_search: negative degree bound");
  const auto width = static_cast<std::size_t>(degree_bound + 1);
  const LaurentZ xi2 = series_square(xi);
  // Unknown (j, i) is the z^i coefficient of B_j, at index j * width + i.
  IncrementalKernel kernel(3 * width);
  const std::int64_t lowest = std::max(xi.horizon(), xi2.horizon()) + degree_bound;
  for (std::int64_t e = degree_bound; e >= lowest; --e) {
    BitVector row(3 * width);
    for (std::size_t i = 0; i < width; ++i) {
      const std::int64_t shifted = e - static_cast<std::int64_t>(i);
      if (shifted == 0) row.set(i);
      if (xi.coefficient(shifted)) row.set(width + i);
      if (xi2.coefficient(shifted)) row.set(2 * width + i);
    }
    if (kernel.add_equation(row) == 0) {
      // Some nonzero B vanished at every exponent above e.
      return {degree_bound, -e};
    }
  }
  throw PrecisionExhausted("vanishing_search: kernel still nontrivial at the horizon (D = " +
                           std::to_string(degree_bound) + ")");
}

ApproxExperiment approx_experiment(const PolyZ& a, const PolyZ& b, int l_max) {
  if (l_max < 1 || l_max > 6) throw InvalidArgument("approx_experiment: l_max must lie in 1..6");
  const QuarticInstance inst = make_instance(a, b);
  ApproxExperiment out;
  CertificateBuilder c("approx[" + pair_label(a, b) + "]");
  c.param("a", a.to_string()).param("b", b.to_string()).param("l_max", l_max);

  const std::int64_t deg_top = inst.d * (std::int64_t{1} << (2 * l_max - 1));
  const std::int64_t search_top = std::min<std::int64_t>(deg_top, kMaxSearchDegree);
  const std::int64_t max_letter = std::max(a.degree(), b.degree());
  const std::int64_t precision = std::max(2 * deg_top + 4 * max_letter + 16, 5 * search_top + 64);
  c.param("precision", precision);
  const LaurentZ xi = xi_series(a, b, precision);
  const LaurentZ xi2 = series_square(xi);

  // Powers of two from 4 plus every deg q_{4^l}, all capped at search_top.
  std::set<std::int64_t> search_degrees;
  for (std::int64_t D = 4; D <= search_top; D *= 2) search_degrees.insert(D);

  for (int l = 1; l <= l_max; ++l) {
    const ConvergentPair cv = tm_convergent(a, b, static_cast<unsigned>(l));
    ApproxRecord r;
    r.k = cv.index;
    r.q = cv.q;
    const LaurentZ f1 = (cv.q * xi).fractional_part();
    const LaurentZ f2 = (cv.q * xi2).fractional_part();
    if (f1.is_zero() || f2.is_zero()) throw PrecisionExhausted("approx_experiment: fractional part below horizon");
    r.norm_q_xi = norm(f1);
    r.norm_q_xi2 = norm(f2);
    r.product_check = std::max(r.norm_q_xi.log2, r.norm_q_xi2.log2) == -cv.q.degree();
    const LaurentZ prev = cv.q_prev * xi + LaurentZ::from_poly(cv.p_prev);
    r.previous_check = !prev.is_zero() && prev.top() == -cv.q.degree();
    const std::string tag = "k=" + std::to_string(r.k);
    c.check("max(||q xi||, ||q xi^2||) = 1/|q| (" + tag + ")", r.product_check,
            "log2 " + std::to_string(r.norm_q_xi.log2) + ", " + std::to_string(r.norm_q_xi2.log2) +
                "; deg q = " + std::to_string(cv.q.degree()));
    c.check("|xi - p_{k-1}/q_{k-1}| = 1/(|q_{k-1}||q_k|) (" + tag + ")", r.previous_check);
    out.records.push_back(std::move(r));

    if (cv.q.degree() <= search_top) search_degrees.insert(cv.q.degree());
  }

  for (const std::int64_t D : search_degrees) {
    const VanishingSearch vs = vanishing_search(xi, D);
    const std::string tag = "D=" + std::to_string(D);
    c.param("vanishing_order[" + tag + "]", vs.order);
    c.param("excess_over_3D[" + tag + "]", vs.excess_over_3d());
    out.searches.push_back(vs);
  }
  out.certificate = c.finish();
  return out;
}

}  // namespace tmcf

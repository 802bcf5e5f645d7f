#include "tmcf/identities.hpp"

#include <algorithm>
#include <sstream>

#include "tmcf/contfrac.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/tau_laurent.hpp"

namespace tmcf {

namespace {

using Terms = std::vector<std::vector<BiPoly>>;

const BiPoly& A() {
  static const BiPoly v = BiPoly::a();
  return v;
}
const BiPoly& B() {
  static const BiPoly v = BiPoly::b();
  return v;
}
const BiPoly& A_plus_B() {
  static const BiPoly v = BiPoly::a() + BiPoly::b();
  return v;
}

BiPoly tau_pow(std::int64_t e) {
  if (e < 0) throw ConstructionError("negative tau exponent " + std::to_string(e));
  return pow(BiPoly::tau(), static_cast<std::uint64_t>(e));
}

BiPoly ab_pow(std::int64_t e) { return BiPoly::monomial(e, e); }

std::string with_k(const std::string& name, int k) { return name + "[k=" + std::to_string(k) + "]"; }

// b(a+b)tau^2 + a^2, shared by Delta_k, T_k and a_4.
BiPoly tail_coefficient() { return B() * A_plus_B() * tau_pow(2) + A().square(); }

bool entries_within(const SymMat2& m, std::int64_t bound) {
  for (const BiPoly* e : {&m.m00, &m.m01, &m.m10, &m.m11}) {
    if (e->deg_a() > bound || e->deg_b() > bound) return false;
  }
  return true;
}

}  // namespace

std::int64_t exact_exponent(std::int64_t num, std::int64_t den, const char* what) {
  if (den == 0 || num % den != 0) {
    throw ConstructionError(std::string("exponent ") + what + " = " + std::to_string(num) + "/" +
                            std::to_string(den) + " is not an integer");
  }
  return num / den;
}

SymMat2 tower_seed() { return {BiPoly::one(), A(), A(), BiPoly()}; }

std::vector<TowerState> build_tower(int k_max) {
  if (k_max < 1) throw InvalidArgument("build_tower: k_max must be at least 1");
  std::vector<TowerState> out;
  SymMat2 m = tower_seed();
  for (int k = 1; k <= k_max; ++k) {
    TowerState s;
    s.k = k;
    s.N = m * swapped(m);
    s.M = s.N * swapped(s.N);
    s.Z = s.N.m00 + s.N.m01;
    s.n = std::int64_t{1} << (2 * k - 1);
    s.m = exact_exponent((std::int64_t{1} << (2 * k)) + 2, 3, "m_k");
    m = s.M;
    out.push_back(std::move(s));
  }
  return out;
}

std::array<BiPoly, 5> quartic_coefficients() {
  const BiPoly a2 = A().square();
  const BiPoly b2 = B().square();
  const BiPoly s = a2 * b2 + a2 + b2;
  const BiPoly a2b4 = BiPoly::monomial(2, 4);
  const BiPoly A1 = A() * B() * A_plus_B() * s;
  return {B() * A_plus_B() * s + a2b4, A1, a2 * b2 * s, A1, A() * A_plus_B() * s + a2b4};
}

std::array<BiPoly, 5> quartic_lower_coefficients() {
  const BiPoly a2 = tau_pow(2);
  const BiPoly a1 = A_plus_B() * a2;
  return {A() * A_plus_B() * a2 + A().square(), a1, a2, a1, B() * A_plus_B() * a2 + A().square()};
}

Certificate verify_tower_structure(const TowerState& s) {
  CertificateBuilder c(with_k("tower_structure", s.k));
  c.param("k", s.k).param("n_k", s.n).param("m_k", s.m);
  c.check("M_k symmetric", s.M.is_symmetric());
  c.check("U_k swap invariant", s.U() == s.U().swapped());
  c.check("W_k swap invariant", s.W() == s.W().swapped());
  c.check("N_k lower-left = swap(V_k)", s.N.m10 == s.V().swapped());
  c.check("entry degrees <= 2^(2k-1)", entries_within(s.M, s.n));
  if (s.k >= 2) {
    const std::int64_t prev = exact_exponent((std::int64_t{1} << (2 * s.k - 2)) + 2, 3, "m_{k-1}");
    c.check("m_k = 4 m_{k-1} - 2", s.m == 4 * prev - 2);
  }
  c.residual_terms<BiPoly>("det M_k + (ab)^(2n)", Terms{{s.Q(), s.R()}, {s.P(), s.P()}, {ab_pow(2 * s.n)}});
  return c.finish();
}

Certificate verify_PQR(const TowerState& s) {
  const std::int64_t e1 = exact_exponent(2 * s.n + 2, 3, "(2n+2)/3");
  const std::int64_t e2 = exact_exponent(2 * s.n - 4, 3, "(2n-4)/3");
  CertificateBuilder c(with_k("PQR", s.k));
  c.param("k", s.k).param("n_k", s.n);
  c.residual_terms<BiPoly>("Q + R + tau^((2n+2)/3)", Terms{{s.Q()}, {s.R()}, {tau_pow(e1)}});
  c.residual_terms<BiPoly>("P + swap(P) + (1+tau) tau^((2n-4)/3)",
                           Terms{{s.P()}, {s.P().swapped()}, {A_plus_B(), tau_pow(e2)}});
  c.residual_terms<BiPoly>("Q + swap(R) + tau^((2n-4)/3)", Terms{{s.Q()}, {s.R().swapped()}, {tau_pow(e2)}});
  return c.finish();
}

Certificate verify_ZPQR(const TowerState& s) {
  const std::int64_t e1 = exact_exponent(s.n + 1, 3, "(n+1)/3");
  const std::int64_t e2 = exact_exponent(2 * s.n + 2, 3, "(2n+2)/3");
  const std::int64_t e3 = exact_exponent(s.n - 2, 3, "(n-2)/3");
  const BiPoly& Z = s.Z;
  CertificateBuilder c(with_k("ZPQR", s.k));
  c.param("k", s.k).param("n_k", s.n);
  c.residual_terms<BiPoly>("Q + Z^2", Terms{{s.Q()}, {Z, Z}});
  c.residual_terms<BiPoly>("R + Z^2 + tau^((2n+2)/3)", Terms{{s.R()}, {Z, Z}, {tau_pow(e2)}});
  c.residual_terms<BiPoly>("P + Z^2 + tau^((n+1)/3) Z + (ab)^n",
                           Terms{{s.P()}, {Z, Z}, {tau_pow(e1), Z}, {ab_pow(s.n)}});
  c.residual_terms<BiPoly>("swap(Z) + Z + (1+tau) tau^((n-2)/3)",
                           Terms{{Z.swapped()}, {Z}, {A_plus_B(), tau_pow(e3)}});
  c.residual_terms<BiPoly>("QR + P^2 + (ab)^(2n)", Terms{{s.Q(), s.R()}, {s.P(), s.P()}, {ab_pow(2 * s.n)}});
  return c.finish();
}

Certificate verify_recursion_and_quartic(const TowerState& s, const TowerState& next) {
  if (next.k != s.k + 1) throw InvalidArgument("verify_recursion_and_quartic: states are not consecutive");
  const std::int64_t n = s.n;
  const std::int64_t e_rec = exact_exponent(2 * n - 1, 3, "(2n-1)/3");
  const std::int64_t e_lin = exact_exponent(2 * n - 4, 3, "(2n-4)/3");
  const std::int64_t e_tail = exact_exponent(4 * n - 8, 3, "(4n-8)/3");
  const BiPoly& Z = s.Z;
  CertificateBuilder c(with_k("recursion_and_quartic", s.k));
  c.param("k", s.k).param("n_k", n);
  c.residual_terms<BiPoly>("Z_{k+1} + tau^n Z + tau^((2n-1)/3) (ab)^n + (ab)^(2n)",
                           Terms{{next.Z}, {tau_pow(n), Z}, {tau_pow(e_rec), ab_pow(n)}, {ab_pow(2 * n)}});
  c.residual_terms<BiPoly>("Delta_k + (a+b)(ab)^n tau^((2n-4)/3) + (ab)^(2n)",
                           Terms{{Z, Z, Z, Z},
                                 {tau_pow(e_rec), Z, Z},
                                 {A_plus_B(), tau_pow(n - 1), Z},
                                 {tail_coefficient(), tau_pow(e_tail)},
                                 {A_plus_B(), ab_pow(n), tau_pow(e_lin)},
                                 {ab_pow(2 * n)}});
  return c.finish();
}

Certificate verify_delta_factorization(const TowerState& s) {
  const std::int64_t n = s.n;
  const std::int64_t e1 = exact_exponent(s.n + 1, 3, "(n+1)/3");
  CertificateBuilder c(with_k("delta_factorization", s.k));
  const auto lower = quartic_lower_coefficients();
  const BiPoly& P = s.P();
  const BiPoly& Q = s.Q();
  const BiPoly P2 = P.square();
  const BiPoly Q2 = Q.square();
  const BiPoly P4 = P2.square();
  const BiPoly Q4 = Q2.square();
  const Terms delta_terms{{lower[4], P4},
                          {lower[3], P2, P, Q},
                          {lower[2], P2, Q2},
                          {lower[1], P, Q2, Q},
                          {lower[0], Q4}};
  const BiPoly Z2 = s.Z.square();
  const BiPoly Z4 = Z2.square();
  const Terms closed_terms{{tau_pow(4), Z4},
                           {tau_pow(3), Z4},
                           {A_plus_B(), tau_pow(e1 + 2), Z2, s.Z},
                           {A_plus_B(), tau_pow(2), ab_pow(n), Z2},
                           {tail_coefficient(), ab_pow(2 * n)}};

  c.param("k", s.k).param("n_k", n);
  BiPoly residual[2];
  for (Order order : {Order::forward, Order::permuted}) {
    const BiPoly delta = evaluate(delta_terms, order);
    const auto T = delta.divided_by_monomial(2 * n, 2 * n);
    const bool forward = order == Order::forward;
    c.check(std::string("(ab)^(2n) divides delta_k") + (forward ? "" : " (permuted)"), T.has_value());
    if (T) {
      residual[forward ? 0 : 1] = *T + evaluate(closed_terms, order);
    } else {
      residual[forward ? 0 : 1] = delta;
    }
  }
  c.residual("T_k + closed form", residual[0], residual[1]);
  return c.finish();
}

Certificate verify_quartic_coefficients() {
  const auto upper = quartic_coefficients();
  const auto lower = quartic_lower_coefficients();
  CertificateBuilder c("quartic_coefficients");
  for (std::size_t j = 0; j < 5; ++j) {
    const BiPoly flipped = lower[j].flipped(4, 4);
    c.residual("A_" + std::to_string(j) + " + (ab)^4 a_" + std::to_string(j) + "(1/a,1/b)", upper[j] + flipped,
               flipped + upper[j]);
  }
  c.check("A_3 = A_1", upper[3] == upper[1]);
  c.residual_terms<BiPoly>("a_1 + (a+b) a_2", Terms{{lower[1]}, {A_plus_B(), lower[2]}});
  c.residual_terms<BiPoly>("a_3 + (a+b) a_2", Terms{{lower[3]}, {A_plus_B(), lower[2]}});
  const BiPoly w = A() * B() + A() + B();
  c.residual_terms<BiPoly>("A_0 + A_4 + (a+b)^2 (ab+a+b)^2",
                           Terms{{upper[0]}, {upper[4]}, {A_plus_B(), A_plus_B(), w, w}});
  return c.finish();
}

Certificate verify_q4k_bridge(const TowerState& s) {
  CertificateBuilder c(with_k("q4k_bridge", s.k));
  const unsigned levels = static_cast<unsigned>(s.k);
  const SymMat2 ma{A(), BiPoly::one(), BiPoly::one(), BiPoly()};
  const SymMat2 mb{B(), BiPoly::one(), BiPoly::one(), BiPoly()};
  // Block squaring along the word, and an independent balanced product over the letters.
  const SymMat2 block = tm_block_product(ma, mb, levels).first;
  const std::size_t len = std::size_t{1} << (2 * levels);
  const SymMat2 tree = product_tree<BiPoly>(0, len, [&](std::size_t i) { return tm_letter(i) ? mb : ma; });

  const BiPoly Qf = s.Q().flipped(s.n, s.n);
  const BiPoly Pf = s.P().flipped(s.n, s.n);
  c.param("k", s.k).param("n_k", s.n).param("convergent_index", static_cast<std::int64_t>(len));
  c.residual("q_{4^k} + (ab)^n Q_k(1/a,1/b)", block.m00 + Qf, Qf + tree.m00);
  c.residual("p_{4^k} + (ab)^n P_k(1/a,1/b)", block.m10 + Pf, Pf + tree.m10);
  return c.finish();
}

Certificate verify_explicit_Zk_and_alpha(const TowerState& s) {
  using TL = TauLaurent;
  const int k = s.k;
  CertificateBuilder c(with_k("explicit_Zk_alpha", k));
  c.param("k", k);

  // Z_k = tau^((2^(2k-1)-2)/3) (1 + b + sum_j tau^((2 - 2^(j+1) - chi(j))/3) (ab)^(2^j)).
  std::vector<std::vector<TL>> z_terms;
  const TL prefactor = TL::tau_power(exact_exponent((std::int64_t{1} << (2 * k - 1)) - 2, 3, "Z_k prefactor"));
  z_terms.push_back({prefactor, TL::from(BiPoly::one() + B())});
  for (int j = 0; j <= 2 * k - 2; ++j) {
    const std::int64_t e = exact_exponent(2 - (std::int64_t{2} << j) - (j % 2), 3, "Z_k summand");
    z_terms.push_back({prefactor, TL(ab_pow(std::int64_t{1} << j), e)});
  }
  z_terms.push_back({TL::from(s.Z)});
  c.residual("Z_k + explicit sum", evaluate(z_terms, Order::forward).numerator(),
             evaluate(z_terms, Order::permuted).numerator());

  if (k >= 2) {
    // alpha_k = sum_{j=1}^{k-1} tau^((2 - 2^(2j+1))/3) (ab)^(2^(2j)).
    TL alpha;
    for (int j = 1; j <= k - 1; ++j) {
      alpha = alpha + TL(ab_pow(std::int64_t{1} << (2 * j)),
                         exact_exponent(2 - (std::int64_t{1} << (2 * j + 1)), 3, "alpha summand"));
    }
    const TL a = TL::from(A());
    const TL b = TL::from(B());
    const TL den_poly = TL::from(BiPoly::parse("1+b^2+a^2*b^2"));
    const TL num_poly = TL::from(BiPoly::parse("a+a^2*b+a*b^2"));
    const std::vector<std::vector<TL>> prop_terms{{TL::from(s.P()), den_poly},
                                                  {TL::from(s.P()), alpha},
                                                  {TL::from(s.P()), alpha, alpha},
                                                  {TL::from(s.Q()), num_poly},
                                                  {TL::from(s.Q()), a + b, alpha}};
    c.residual("P_k (1+b^2+a^2b^2+alpha+alpha^2) + Q_k (a+a^2b+ab^2+(a+b)alpha)",
               evaluate(prop_terms, Order::forward).numerator(), evaluate(prop_terms, Order::permuted).numerator());

    const std::int64_t e = exact_exponent(8 - (std::int64_t{1} << (2 * k + 1)), 3, "alpha relation");
    const TL alpha2 = alpha * alpha;
    const std::vector<std::vector<TL>> rel_terms{{alpha2, alpha2},
                                                 {TL::tau_power(2), alpha},
                                                 {TL(ab_pow(std::int64_t{1} << (2 * k)), e)},
                                                 {TL::from(ab_pow(4))}};
    c.residual("alpha^4 + tau^2 alpha + tau^((8-2^(2k+1))/3) (ab)^(2^(2k)) + a^4b^4",
               evaluate(rel_terms, Order::forward).numerator(), evaluate(rel_terms, Order::permuted).numerator());
  }
  return c.finish();
}

BiSeries ring_eta(std::int64_t cap) {
  if (cap < 0) throw InvalidArgument("ring_eta: negative cap");
  // A_n = A_{n-1} + t_{n-1} A_{n-2}, likewise B_n; the error of A_n/B_n has
  // total degree > n.
  const std::size_t depth = static_cast<std::size_t>(cap) + 2;
  BiPoly a_prev = BiPoly::one(), a_cur;
  BiPoly b_prev, b_cur = BiPoly::one();
  for (std::size_t i = 0; i < depth; ++i) {
    const BiPoly& t = tm_letter(i) ? B() : A();
    BiPoly a_next = (a_cur + t * a_prev).truncated_total(cap);
    BiPoly b_next = (b_cur + t * b_prev).truncated_total(cap);
    a_prev = std::move(a_cur);
    a_cur = std::move(a_next);
    b_prev = std::move(b_cur);
    b_cur = std::move(b_next);
  }
  if (!b_cur.coefficient(0, 0)) throw ConstructionError("ring_eta: convergent denominator is not a unit");
  return biseries_div(BiSeries(a_cur, cap), BiSeries(b_cur, cap));
}

Certificate verify_ring_eta(std::int64_t cap) {
  if (cap < 8) throw InvalidArgument("verify_ring_eta: cap must be at least 8");
  CertificateBuilder c("ring_eta");
  const BiSeries eta = ring_eta(cap);
  auto S = [cap](const BiPoly& p) { return BiSeries(p, cap); };
  const BiSeries apb = S(A_plus_B());
  const BiSeries apb1 = S(A_plus_B() + BiPoly::one());
  const std::vector<std::vector<BiSeries>> terms{{S(A()), apb, apb, apb},
                                                 {S(A() * B())},
                                                 {apb, apb1, eta},
                                                 {apb1, eta, eta},
                                                 {eta, eta, eta, eta}};
  c.param("cap", cap);
  c.check("eta has zero constant term", !eta.coefficient(0, 0));
  c.residual("a(a+b)^3 + ab + (a+b)(a+b+1)eta + (a+b+1)eta^2 + eta^4",
             evaluate(terms, Order::forward).poly(), evaluate(terms, Order::permuted).poly());
  return c.finish();
}

SectionsResult sections_support(std::size_t depth) {
  if (depth < 2) throw InvalidArgument("sections_support: depth must be at least 2");
  const SymMat2 ma{A(), BiPoly::one(), BiPoly::one(), BiPoly()};
  const SymMat2 mb{B(), BiPoly::one(), BiPoly::one(), BiPoly()};
  const SymMat2 m = product_tree<BiPoly>(0, depth, [&](std::size_t i) { return tm_letter(i) ? mb : ma; });
  const BiPoly& q = m.m00;
  const BiPoly& p = m.m10;
  // a = 1/u, b = 1/v: flipping both by q's bidegree leaves q-hat with constant term 1.
  const std::int64_t da = q.deg_a();
  const std::int64_t db = q.deg_b();
  const BiPoly q_hat = q.flipped(da, db);
  const BiPoly p_hat = p.flipped(da, db);
  if (!q_hat.coefficient(0, 0)) throw ConstructionError("sections_support: flipped denominator is not a unit");

  SectionsResult r;
  r.depth = depth;
  // The error 1/(q_n q_{n+1}) starts at total degree >= 2n+1; keep a margin of 2.
  r.trusted_degree = 2 * static_cast<std::int64_t>(depth) - 2;
  const BiSeries xi = biseries_div(BiSeries(p_hat, r.trusted_degree), BiSeries(q_hat, r.trusted_degree));
  for (const auto& e : xi.poly().support()) {
    r.dots.push_back({-e.a, -e.b});
    const bool ea = e.a % 2 == 0;
    const bool eb = e.b % 2 == 0;
    if (ea && eb) ++r.even_even;
    if (ea && !eb) ++r.even_odd;
    if (!ea && eb) ++r.odd_even;
    if (!ea && !eb) ++r.odd_odd;
  }
  std::sort(r.dots.begin(), r.dots.end(), [](const Exponents& x, const Exponents& y) {
    const std::int64_t tx = -(x.a + x.b);
    const std::int64_t ty = -(y.a + y.b);
    if (tx != ty) return tx < ty;
    return x.a > y.a;
  });

  CertificateBuilder c("sections[depth=" + std::to_string(depth) + "]");
  c.param("depth", static_cast<std::int64_t>(depth)).param("trusted_total_degree", r.trusted_degree);
  c.param("dots", static_cast<std::int64_t>(r.dots.size()));
  c.param("even_odd", static_cast<std::int64_t>(r.even_odd)).param("odd_even", static_cast<std::int64_t>(r.odd_even));
  c.check("no (even, even) dots", r.even_even == 0, std::to_string(r.even_even) + " found");
  c.check("no (odd, odd) dots", r.odd_odd == 0, std::to_string(r.odd_odd) + " found");
  if (r.trusted_degree >= 5) {
    const std::vector<Exponents> first{{-1, 0}, {-2, -1}, {-2, -3}};
    const bool ok = r.dots.size() >= 3 && std::equal(first.begin(), first.end(), r.dots.begin());
    c.check("leading dots (-1,0), (-2,-1), (-2,-3)", ok);
  }
  r.certificate = c.finish();
  return r;
}

std::string sections_csv(const SectionsResult& r) {
  std::ostringstream os;
  os << "# depth " << r.depth << ", trusted total degree " << r.trusted_degree << "\n";
  for (const auto& d : r.dots) os << "(" << d.a << "," << d.b << ")\n";
  return os.str();
}

std::string sections_svg(const SectionsResult& r) {
  const std::int64_t extent = std::max<std::int64_t>(r.trusted_degree, 1);
  const double margin = 48.0;
  const double plot = 480.0;
  const double step = plot / static_cast<double>(extent);
  const double size = plot + 2 * margin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Exponent i runs left from 0, exponent j runs down from 0.
  os << "<g stroke=\"#888\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin + plot << "\" y2=\"" << margin
     << "\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << margin + plot
     << "\"/>\n</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
  const std::int64_t tick = std::max<std::int64_t>(1, extent / 8);
  for (std::int64_t t = 0; t <= extent; t += tick) {
    os << "<text x=\"" << margin + t * step << "\" y=\"" << margin - 8 << "\" text-anchor=\"middle\">" << -t
       << "</text>\n";
    os << "<text x=\"" << margin - 8 << "\" y=\"" << margin + t * step + 4 << "\" text-anchor=\"end\">" << -t
       << "</text>\n";
  }
  os << "<text x=\"" << margin + plot / 2 << "\" y=\"16\" text-anchor=\"middle\">exponent of a</text>\n";
  os << "<text x=\"14\" y=\"" << margin + plot / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << margin + plot / 2 << ")\">exponent of b</text>\n</g>\n";
  os << "<g fill=\"#1f4fd1\">\n";
  const double radius = std::clamp(step / 3.0, 1.0, 5.0);
  for (const auto& d : r.dots) {
    os << "<circle cx=\"" << margin + static_cast<double>(-d.a) * step << "\" cy=\""
       << margin + static_cast<double>(-d.b) * step << "\" r=\"" << radius << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::vector<Certificate> verify_identities(int k_max) {
  const auto tower = build_tower(k_max + 1);
  std::vector<Certificate> out;
  out.push_back(verify_quartic_coefficients());
  for (int k = 1; k <= k_max; ++k) {
    const TowerState& s = tower[static_cast<std::size_t>(k - 1)];
    out.push_back(verify_tower_structure(s));
    out.push_back(verify_PQR(s));
    out.push_back(verify_ZPQR(s));
    out.push_back(verify_recursion_and_quartic(s, tower[static_cast<std::size_t>(k)]));
    out.push_back(verify_delta_factorization(s));
    if (k <= 4) out.push_back(verify_q4k_bridge(s));
    out.push_back(verify_explicit_Zk_and_alpha(s));
  }
  return out;
}

}  // namespace tmcf

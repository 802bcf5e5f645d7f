#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tmcf/certificate.hpp"
#include "tmcf/contfrac.hpp"
#include "tmcf/laurent.hpp"
#include "tmcf/poly.hpp"

namespace tmcf {

/// The closed-form quartic specialised at a = a(z), b = b(z).
struct QuarticInstance {
  PolyZ a;
  PolyZ b;
  std::array<PolyZ, 5> A;
  std::int64_t d = 0;  // deg a + deg b

  std::int64_t max_coefficient_degree() const;
};

/// Throws InvalidArgument unless a != b and both are nonconstant.
QuarticInstance make_instance(const PolyZ& a, const PolyZ& b);

/// The Thue-Morse stream [0; a, b, b, a, ...] long enough that cf_eval can
/// reach `precision`.
PQStream tm_stream_for_precision(const PolyZ& a, const PolyZ& b, std::int64_t precision);
/// xi_{a,b} to exponent -precision.
LaurentZ xi_series(const PolyZ& a, const PolyZ& b, std::int64_t precision);

/// Adds the residual sum_j c_j x^j to the builder; returns the lowest
/// exponent at which the residual is trusted.
std::int64_t add_relation_residual(CertificateBuilder& c, const std::string& label, const LaurentZ& x,
                                   const std::vector<PolyZ>& coeffs);

Certificate verify_quartic_at_series(const PolyZ& a, const PolyZ& b, std::int64_t precision);
/// For every l with 4^l within the stream used at `precision`: the exact size
/// of epsilon_{4^l} = sum_j A_j (p/q)^j at k = 4^l, against |q|^-2 and
/// against |ab|^4 |q|^-2.
Certificate epsilon_bound_check(const PolyZ& a, const PolyZ& b, std::int64_t precision);
/// Same series check for an arbitrary relation sum_j coeffs[j] xi^j = 0.
Certificate verify_relation_at_series(const std::string& name, const PolyZ& a, const PolyZ& b,
                                      const std::vector<PolyZ>& coeffs, std::int64_t precision);

Certificate riccati_check(const PolyZ& a, const PolyZ& b, std::int64_t precision);

/// Toeplitz matrix entry (r, c) = A_{2+r-c} over GF(2)[a,b], size 2^s - 2.
Certificate hyperquadratic_toeplitz(int s);

struct JacobiCF {
  /// u_1, u_2, ... (u[0] is u_1).
  std::vector<bool> u;
  /// c_0 .. c_n, bit i of the polynomial is c_i.
  PolyZ c;
  std::size_t n = 0;
  /// Whether a deeper truncation reproduced the same coefficients.
  bool depth_verified = false;
};

/// Coefficients of 1/(1 + u_1 x + x^2/(1 + u_2 x + x^2/(...))) up to x^n.
/// Needs u.size() >= n/2 + 3.
JacobiCF jacobi_coeffs(const std::vector<bool>& u, std::size_t n);
/// u_n = 1 exactly when the (n-1)-th Thue-Morse letter is a: 1, 0, 0, 1, ...
std::vector<bool> omega_sequence(std::size_t count);

/// det [c_{i+j}]_{0 <= i,j < n}.
bool hankel_determinant(const PolyZ& c, std::size_t n);
/// H_n = 1 for n <= n_max (the product formula with every v_j = 1), and
/// c_n = c_{2n+1} + c_{2n+2} for n <= apwenian_max.
/// Throws PrecisionExhausted when j does not carry enough coefficients.
Certificate hankel_suite(const JacobiCF& j, std::size_t n_max, std::size_t apwenian_max);

/// g_0 .. g_4 of the quartic satisfied by omega.
std::array<PolyZ, 5> omega_coefficients();
Certificate omega_quartic_check(std::int64_t precision);

enum class ReferenceRoot { mahler, baumsweet };
/// Mahler: sum_j z^{-4^j}, root of zX^4 + zX + 1. Baum-Sweet: the root of
/// zX^3 + X + z with |X| = 1.
LaurentZ reference_root(ReferenceRoot which, std::int64_t precision);
Certificate reference_root_check(ReferenceRoot which, std::int64_t precision);

struct ApproxRecord {
  std::size_t k = 0;
  PolyZ q;
  Norm norm_q_xi;
  Norm norm_q_xi2;
  /// max(||q xi||, ||q xi^2||) = 1/|q|.
  bool product_check = false;
  /// |xi - p_{k-1}/q_{k-1}| = 1/(|q_{k-1}| |q_k|).
  bool previous_check = false;
};

struct VanishingSearch {
  std::int64_t degree_bound = 0;
  /// Largest L such that some nonzero (B_0, B_1, B_2) with deg B_j <= D has
  /// |B_0 + B_1 xi + B_2 xi^2| <= 2^{-L}.
  std::int64_t order = 0;
  std::int64_t excess_over_3d() const { return order - 3 * degree_bound; }
};

/// Degree-2 best-vanishing search by exact nullspace tracking.
VanishingSearch vanishing_search(const LaurentZ& xi, std::int64_t degree_bound);

struct ApproxExperiment {
  std::vector<ApproxRecord> records;
  std::vector<VanishingSearch> searches;
  Certificate certificate;
};

/// Records for k = 4^l, l = 1 .. l_max (l_max <= 6); vanishing searches for
/// every power of two D >= 4 and every D = deg q_k, up to kMaxSearchDegree.
ApproxExperiment approx_experiment(const PolyZ& a, const PolyZ& b, int l_max);
inline constexpr std::int64_t kMaxSearchDegree = 256;

}  // namespace tmcf

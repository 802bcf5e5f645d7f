#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tmcf/biseries.hpp"
#include "tmcf/bipoly.hpp"
#include "tmcf/certificate.hpp"

namespace tmcf {

/// Level k of the matrix tower M_k(a,b) = M_{k-1}(a,b) M_{k-1}(b,a)^2 M_{k-1}(a,b),
/// with N_k = M_{k-1}(a,b) M_{k-1}(b,a) so that M_k = N_k swap(N_k).
struct TowerState {
  int k = 0;
  SymMat2 M;
  SymMat2 N;
  BiPoly Z;
  std::int64_t n = 0;  // 2^(2k-1)
  std::int64_t m = 0;  // (2^(2k)+2)/3

  const BiPoly& Q() const { return M.m00; }
  const BiPoly& P() const { return M.m01; }
  const BiPoly& R() const { return M.m11; }
  const BiPoly& U() const { return N.m00; }
  const BiPoly& V() const { return N.m01; }
  const BiPoly& W() const { return N.m11; }
};

/// M_0 = [[1, a], [a, 0]].
SymMat2 tower_seed();
/// States for k = 1 .. k_max, in order.
std::vector<TowerState> build_tower(int k_max);

/// num / den, throwing ConstructionError unless the division is exact.
std::int64_t exact_exponent(std::int64_t num, std::int64_t den, const char* what);

/// Closed-form quartic coefficients A_0 .. A_4 of the Thue-Morse value.
std::array<BiPoly, 5> quartic_coefficients();
/// The companion coefficients a_0 .. a_4 built from a_2 = tau^2.
std::array<BiPoly, 5> quartic_lower_coefficients();

Certificate verify_tower_structure(const TowerState& s);
Certificate verify_PQR(const TowerState& s);
Certificate verify_ZPQR(const TowerState& s);
/// Needs the states for k and k+1.
Certificate verify_recursion_and_quartic(const TowerState& s, const TowerState& next);
Certificate verify_delta_factorization(const TowerState& s);
Certificate verify_quartic_coefficients();
/// Symbolic convergents q_{4^k}, p_{4^k} of [0; a, b, b, a, ...] against the
/// flipped tower entries; `s` must be level k.
Certificate verify_q4k_bridge(const TowerState& s);
Certificate verify_explicit_Zk_and_alpha(const TowerState& s);

/// eta = a/(1 + b/(1 + b/(1 + a/...))) in GF(2)[[a,b]] to total degree cap.
BiSeries ring_eta(std::int64_t cap);
Certificate verify_ring_eta(std::int64_t cap);

struct SectionsResult {
  std::size_t depth = 0;
  /// Every monomial of total degree <= trusted_degree is certain.
  std::int64_t trusted_degree = 0;
  /// Exponent pairs (i, j), both <= 0, of the monomials a^i b^j of the value,
  /// sorted by total degree, then by i descending.
  std::vector<Exponents> dots;
  std::size_t even_even = 0;
  std::size_t even_odd = 0;
  std::size_t odd_even = 0;
  std::size_t odd_odd = 0;
  Certificate certificate;
};

/// Expansion of the value in a^{-1}, b^{-1} from the convergent p_depth/q_depth.
SectionsResult sections_support(std::size_t depth);
/// One "(i,j)" row per dot.
std::string sections_csv(const SectionsResult& r);
/// Static scatter plot of the dots.
std::string sections_svg(const SectionsResult& r);

/// Full symbolic suite for k = 1 .. k_max.
std::vector<Certificate> verify_identities(int k_max);

}  // namespace tmcf

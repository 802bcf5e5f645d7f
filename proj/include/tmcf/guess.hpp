#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tmcf/bitmatrix.hpp"
#include "tmcf/certificate.hpp"
#include "tmcf/laurent.hpp"
#include "tmcf/poly.hpp"

namespace tmcf {

/// Extra equations demanded beyond the number of unknowns.
inline constexpr std::int64_t kGuessSafetyMargin = 16;

/// Relation sum_j B_j x^j = 0 of degree r in x with deg B_j <= D, fitted to N
/// consecutive coefficients starting from the highest one that can be nonzero.
struct RelationSystem {
  int relation_degree = 0;
  std::int64_t degree_bound = 0;
  std::int64_t equations = 0;
  /// Exponent of the first equation.
  std::int64_t top_exponent = 0;
  /// Unknown (i, j), the coefficient of z^i in B_j, sits in column i*(r+1) + j.
  BitMatrix matrix{0, 0};
};

RelationSystem relation_system(const LaurentZ& x, int relation_degree, std::int64_t degree_bound,
                               std::int64_t equations);
BitVector encode_relation(const std::vector<PolyZ>& coeffs, int relation_degree, std::int64_t degree_bound);
std::vector<PolyZ> decode_relation(const BitVector& v, int relation_degree, std::int64_t degree_bound);

struct RelationGuess {
  std::vector<PolyZ> coeffs;
  /// max_j deg B_j of the selected relation.
  std::int64_t min_degree = 0;
  /// Dimension of the whole solution space for the requested bound.
  std::size_t kernel_dimension = 0;
};

/// Kernel element of least max_j deg B_j. Throws EmptyKernel when the system
/// has only the zero solution, AmbiguousKernel when several independent
/// relations share the least degree.
RelationGuess guess_relation(const LaurentZ& x, int relation_degree, std::int64_t degree_bound,
                             std::int64_t equations);

/// (B_j / g) with g the gcd of the nonzero B_j.
std::vector<PolyZ> primitive_part(const std::vector<PolyZ>& coeffs);

struct GuessProblem {
  PolyZ a;
  PolyZ b;
  std::int64_t degree_bound = 0;
  std::int64_t precision = 0;
};

/// D = 4(deg a + deg b), which bounds every closed-form coefficient, and
/// N = 5(D+1) + 64.
GuessProblem default_problem(const PolyZ& a, const PolyZ& b);

struct GuessResult {
  GuessProblem problem;
  std::array<PolyZ, 5> B;
  std::int64_t min_degree = 0;
  std::size_t kernel_dimension = 0;
  /// The relation vanishes at every exponent >= -vanishing_order on a
  /// series recomputed at precision 2N.
  std::int64_t vanishing_order = 0;
  bool fresh_residual_zero = false;
  bool matches_closed_form = false;
};

/// Throws InvalidArgument when N < 5(D+1) + kGuessSafetyMargin.
GuessResult guess_quartic(const GuessProblem& p);

Certificate guess_certificate(const GuessResult& r);
nlohmann::json guess_to_json(const GuessResult& r);
GuessResult guess_from_json(const nlohmann::json& j);
/// Writes guess_to_json(r) to path; throws Error on I/O failure.
void emit_certificate(const GuessResult& r, const std::string& path);
GuessResult load_certificate(const std::string& path);
/// Checks the stored relation on a freshly computed series at precision 2N.
Certificate reverify(const GuessResult& r);

/// Lines "a,b"; blank lines and lines starting with '#' are skipped, as is a
/// header line "a,b".
std::vector<std::pair<PolyZ, PolyZ>> parse_pairs_csv(std::string_view text);
/// Eleven pairs with deg a + deg b <= 7 and three beyond.
std::vector<std::pair<PolyZ, PolyZ>> default_batch_pairs();
std::string batch_csv(const std::vector<GuessResult>& results);

}  // namespace tmcf

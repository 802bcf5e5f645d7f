#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmcf/mat2.hpp"
#include "tmcf/poly.hpp"

namespace tmcf {

/// Exponent pair (i, j) of the monomial a^i b^j.
struct Exponents {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend auto operator<=>(const Exponents&, const Exponents&) = default;
};

/// Polynomial over GF(2) in two formal symbols a and b.
///
/// Stored densely as one bit-packed row per power of a: row i holds the
/// polynomial in b multiplying a^i. Trailing zero rows are trimmed so that
/// equality is structural.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<PolyZ> rows);

  static BiPoly zero() { return {}; }
  static BiPoly one() { return monomial(0, 0); }
  static BiPoly a() { return monomial(1, 0); }
  static BiPoly b() { return monomial(0, 1); }
  /// 1 + a + b.
  static BiPoly tau();
  static BiPoly monomial(std::int64_t i, std::int64_t j);
  static BiPoly from_support(const std::vector<Exponents>& support);
  /// Monomial sums such as "a^2*b^2+b^2+1" ("ab" and "a^2b" are accepted too).
  static BiPoly parse(std::string_view text);
  /// One "i,j" pair per line; lines starting with '#' are ignored.
  static BiPoly parse_csv(std::string_view text);

  bool is_zero() const { return rows_.empty(); }
  bool is_one() const;
  /// kMinusInfinity for the zero polynomial.
  std::int64_t deg_a() const;
  std::int64_t deg_b() const;
  std::int64_t total_degree() const;
  /// Smallest a-exponent and b-exponent present (each taken separately).
  std::int64_t val_a() const;
  std::int64_t val_b() const;
  bool coefficient(std::int64_t i, std::int64_t j) const;
  std::size_t term_count() const;
  /// Support sorted by (i, j).
  std::vector<Exponents> support() const;
  const std::vector<PolyZ>& rows() const { return rows_; }

  BiPoly& operator+=(const BiPoly& other);
  BiPoly& operator*=(const BiPoly& other);

  /// Frobenius square (row i -> row 2i, each row squared).
  BiPoly square() const;
  /// The involution a <-> b.
  BiPoly swapped() const;
  /// Multiplication by a^i b^j.
  BiPoly shifted(std::int64_t i, std::int64_t j) const;
  /// Division by a^i b^j when every monomial is divisible; nullopt otherwise.
  std::optional<BiPoly> divided_by_monomial(std::int64_t i, std::int64_t j) const;
  /// a^da b^db x(1/a, 1/b); requires da >= deg_a and db >= deg_b.
  BiPoly flipped(std::int64_t da, std::int64_t db) const;
  /// Drops every monomial of total degree > cap.
  BiPoly truncated_total(std::int64_t cap) const;

  std::string to_string() const;
  std::string to_csv() const;
  std::uint64_t digest() const;

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

 private:
  void trim();

  std::vector<PolyZ> rows_;
};

BiPoly operator+(BiPoly x, const BiPoly& y);
/// Product by Kronecker substitution a -> t^D, b -> t with D the smallest
/// power of two exceeding deg_b(x) + deg_b(y); sparse operands multiply by
/// shift-and-add instead.
BiPoly operator*(const BiPoly& x, const BiPoly& y);
BiPoly bipoly_mul(const BiPoly& x, const BiPoly& y);
/// Reference product by the naive double loop over supports; test oracle.
BiPoly bipoly_mul_naive(const BiPoly& x, const BiPoly& y);
BiPoly pow(const BiPoly& x, std::uint64_t n);
BiPoly bipoly_swap(const BiPoly& x);
/// Evaluation at a = pa(z), b = pb(z).
PolyZ bipoly_subst(const BiPoly& x, const PolyZ& pa, const PolyZ& pb);

/// Kronecker image sum x_ij t^(i*gap + j); a ring homomorphism for any gap.
PolyZ kronecker_pack(const BiPoly& x, std::size_t gap);
/// Inverse of kronecker_pack, valid when every b-degree is below gap.
BiPoly kronecker_unpack(const PolyZ& packed, std::size_t gap);

/// Division by tau = 1 + a + b: (quotient, remainder in GF(2)[b]).
std::pair<BiPoly, BiPoly> divrem_tau(const BiPoly& x);
/// Largest e with tau^e dividing x (x nonzero), and the cofactor.
std::pair<std::int64_t, BiPoly> strip_tau(const BiPoly& x);

/// 2x2 matrix of bivariate polynomials (q, p; p', r); symmetric for M_k.
using SymMat2 = Mat2<BiPoly>;

/// Entrywise a <-> b exchange.
SymMat2 swapped(const SymMat2& m);

/// Dense square matrix with value entries.
template <class T>
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n) {}
  std::size_t size() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<T> data_;
};

inline constexpr std::size_t kCofactorLimit = 8;

/// Determinant by cofactor (Laplace) expansion, memoised over column sets.
/// Throws SizeLimit above kCofactorLimit.
BiPoly bipoly_mat_det(const SquareMatrix<BiPoly>& m);
/// Fraction-free (Bareiss) elimination carried out on Kronecker images in
/// GF(2)[t]; no size limit.
BiPoly bipoly_det_bareiss(const SquareMatrix<BiPoly>& m);

}  // namespace tmcf

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tmcf {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

/// Degree of the zero polynomial. Never equal to -1 so that norms 2^deg
/// stay unambiguous.
inline constexpr std::int64_t kMinusInfinity = std::numeric_limits<std::int64_t>::min();

/// Word count above which multiplication switches from schoolbook to
/// Karatsuba splitting.
inline constexpr std::size_t kKaratsubaThreshold = 24;

/// Polynomial over GF(2) in the variable z, bit-packed 64 exponents per word.
/// Bit i of the packed sequence is the coefficient of z^i. The word vector
/// never carries trailing zero words, so equality is representation equality.
class PolyZ {
 public:
  PolyZ() = default;
  explicit PolyZ(std::vector<Word> words);

  static PolyZ zero() { return {}; }
  static PolyZ one() { return monomial(0); }
  static PolyZ z() { return monomial(1); }
  static PolyZ monomial(std::size_t exponent);
  /// Polynomial whose coefficients are the bits of a single word.
  static PolyZ from_mask(Word mask);
  /// Bits [offset, offset + length) of a packed word sequence.
  static PolyZ from_bit_range(std::span<const Word> words, std::size_t offset, std::size_t length);

  /// Accepts monomial sums in z ("z^3+z+1", "1", "0") or a hexadecimal mask ("0x0B").
  static PolyZ parse(std::string_view text);

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return words_.size() == 1 && words_[0] == 1; }
  /// kMinusInfinity for the zero polynomial.
  std::int64_t degree() const;
  bool bit(std::size_t exponent) const;
  std::size_t popcount() const;
  std::span<const Word> words() const { return words_; }
  std::size_t word_count() const { return words_.size(); }

  void set_bit(std::size_t exponent, bool value = true);
  void flip_bit(std::size_t exponent);

  PolyZ& operator+=(const PolyZ& other);
  PolyZ& operator*=(const PolyZ& other);

  /// Multiplication by z^n; a negative n drops the low |n| coefficients.
  PolyZ shifted(std::int64_t n) const;
  /// Remainder modulo z^n.
  PolyZ truncated(std::size_t n) const;
  /// Frobenius square: spreads bits, linear time.
  PolyZ square() const;
  /// Coefficients reversed inside a window of `length` bits: z^(length-1) P(1/z).
  PolyZ reversed(std::size_t length) const;

  std::string to_string() const;
  std::string to_hex() const;
  /// Stable 64-bit FNV-1a digest of the packed words.
  std::uint64_t digest() const;

  friend bool operator==(const PolyZ&, const PolyZ&) = default;

 private:
  void normalize();

  std::vector<Word> words_;
};

PolyZ operator+(PolyZ x, const PolyZ& y);
PolyZ operator*(const PolyZ& x, const PolyZ& y);

struct DivRem {
  PolyZ quotient;
  PolyZ remainder;
};

/// Euclidean division x = q*y + r with deg r < deg y. Throws DivisionByZero.
DivRem divrem(const PolyZ& x, const PolyZ& y);
/// Exact division; throws InvalidArgument if y does not divide x.
PolyZ exact_div(const PolyZ& x, const PolyZ& y);
PolyZ gcd(PolyZ x, PolyZ y);
PolyZ pow(const PolyZ& x, std::uint64_t n);
/// Formal derivative in characteristic 2: odd-exponent terms shifted down.
PolyZ derivative(const PolyZ& x);
/// Square root of a polynomial whose support has only even exponents.
/// Throws NotASquare otherwise.
PolyZ sqrt(const PolyZ& x);

namespace detail {

/// 64x64 -> 128 bit carryless product, low word in lo.
void clmul(Word a, Word b, Word& lo, Word& hi);

/// out ^= a*b over GF(2)[z]; out must hold a.size() + b.size() words.
void mul_accumulate(std::span<const Word> a, std::span<const Word> b, std::span<Word> out);

/// dst ^= src << bit_offset, growing dst when needed.
void xor_shifted(std::vector<Word>& dst, std::span<const Word> src, std::size_t bit_offset);

/// Reference schoolbook product, used as a test oracle for the fast paths.
std::vector<Word> mul_schoolbook(std::span<const Word> a, std::span<const Word> b);

}  // namespace detail

}  // namespace tmcf

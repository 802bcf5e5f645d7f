#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tmcf/laurent.hpp"
#include "tmcf/mat2.hpp"
#include "tmcf/poly.hpp"

namespace tmcf {

/// Continued fraction [a0; a1, a2, ...] over GF(2)[z]. a0 may be any
/// polynomial (including 0); every later quotient has degree >= 1.
struct PQStream {
  PolyZ a0;
  std::vector<PolyZ> quotients;

  /// Number of quotients after a0.
  std::size_t size() const { return quotients.size(); }
  /// Quotient a_i, with a_0 the integral part.
  const PolyZ& operator[](std::size_t i) const { return i == 0 ? a0 : quotients[i - 1]; }
  /// deg a_1 + ... + deg a_k.
  std::int64_t degree_sum(std::size_t k) const;

  friend bool operator==(const PQStream&, const PQStream&) = default;
};

enum class ExpandStatus {
  complete,           // the requested number of quotients was extracted
  finite,             // exact rational input, expansion terminated
  horizon_exhausted,  // next quotient depends on coefficients below the horizon
};

struct Expansion {
  PQStream stream;
  ExpandStatus status = ExpandStatus::complete;
};

/// Extracts a0 and up to `count` further quotients. A quotient a_n is only
/// emitted when 2 deg q_n <= -horizon, which guarantees every series agreeing
/// with x on its trusted range has the same first n quotients. Throws
/// PrecisionExhausted when not even a0 is determined (horizon > 0).
Expansion cf_expand(const LaurentZ& x, std::size_t count);

struct ConvergentPair {
  PolyZ p;
  PolyZ q;
  PolyZ p_prev;
  PolyZ q_prev;
  std::size_t index = 0;
};

/// [[a,1],[1,0]].
Mat2<PolyZ> quotient_matrix(const PolyZ& a);

/// p_k / q_k = [a0; a1, ..., ak] together with p_{k-1}, q_{k-1}, from the
/// matrix product prod_{i<=k} [[a_i,1],[1,0]] = [[p_k, p_{k-1}], [q_k, q_{k-1}]].
/// Throws InvalidArgument when k > s.size().
ConvergentPair cf_convergents(const PQStream& s, std::size_t k);
/// Same result by the plain left-to-right fold; kept as a reference.
ConvergentPair cf_convergents_sequential(const PQStream& s, std::size_t k);

/// Value of the stream to exponent -precision, from the shortest convergent
/// with 2 deg q_k >= precision. Throws PrecisionExhausted when the stream is
/// too short.
LaurentZ cf_eval(const PQStream& s, std::int64_t precision);

/// Prefix of the Thue-Morse word over a two-letter alphabet.
class TMWord {
 public:
  TMWord(PolyZ a, PolyZ b, std::vector<bool> letters);

  std::size_t length() const { return letters_.size(); }
  /// false for a, true for b.
  bool letter(std::size_t i) const { return letters_[i]; }
  const PolyZ& symbol(std::size_t i) const { return letters_[i] ? b_ : a_; }
  const PolyZ& a() const { return a_; }
  const PolyZ& b() const { return b_; }
  bool is_palindrome(std::size_t prefix_length) const;
  /// Letters as a string over {a, b}.
  std::string to_string() const;
  /// [0; t_0, t_1, ...].
  PQStream to_stream() const;

 private:
  PolyZ a_;
  PolyZ b_;
  std::vector<bool> letters_;
};

/// Parity of the binary digit sum of k: the k-th Thue-Morse letter.
inline bool tm_letter(std::uint64_t k) { return __builtin_parityll(k) != 0; }

/// First n letters, built by t_{2k} = t_k, t_{2k+1} = not t_k.
TMWord tm_prefix(std::size_t n, const PolyZ& a, const PolyZ& b);

/// p_k, q_k for the Thue-Morse stream [0; t_0, ...] at k = 4^levels, by block
/// squaring of the letter matrices.
ConvergentPair tm_convergent(const PolyZ& a, const PolyZ& b, unsigned levels);

struct Spectrum {
  std::int64_t max_degree = kMinusInfinity;
  std::map<std::int64_t, std::size_t> histogram;

  /// log2 of the Lagrange constant estimate 2^{-max_degree}.
  std::int64_t lagrange_log2() const { return -max_degree; }
};

/// Degree statistics of a_1 .. a_window. Throws InvalidArgument when the
/// stream is shorter than the window.
Spectrum spectrum_window(const PQStream& s, std::size_t window);

/// JSON array of polynomial strings, a0 first.
std::string stream_to_json(const PQStream& s);
PQStream stream_from_json(std::string_view text);

}  // namespace tmcf

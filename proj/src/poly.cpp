#include "tmcf/poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

#include "tmcf/errors.hpp"

#if defined(__PCLMUL__)
#include <smmintrin.h>
#include <wmmintrin.h>
#endif

namespace tmcf {

namespace detail {

void clmul(Word a, Word b, Word& lo, Word& hi) {
#if defined(__PCLMUL__)
  const __m128i va = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i r = _mm_clmulepi64_si128(va, vb, 0x00);
  lo = static_cast<Word>(_mm_cvtsi128_si64(r));
  hi = static_cast<Word>(_mm_extract_epi64(r, 1));
#else
  Word l = 0;
  Word h = 0;
  for (unsigned i = 0; i < kWordBits; ++i) {
    if (((b >> i) & 1) == 0) continue;
    l ^= a << i;
    if (i != 0) h ^= a >> (kWordBits - i);
  }
  lo = l;
  hi = h;
#endif
}

namespace {

void schoolbook(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Word ai = a[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      Word lo;
      Word hi;
      clmul(ai, b[j], lo, hi);
      out[i + j] ^= lo;
      out[i + j + 1] ^= hi;
    }
  }
}

// Balanced Karatsuba; a and b have the same length n.
void karatsuba(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  const std::size_t n = a.size();
  if (n < kKaratsubaThreshold) {
    schoolbook(a, b, out);
    return;
  }
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;
  const auto a0 = a.first(lo);
  const auto a1 = a.subspan(lo);
  const auto b0 = b.first(lo);
  const auto b1 = b.subspan(lo);

  std::vector<Word> p0(2 * lo, 0);
  std::vector<Word> p2(2 * hi, 0);
  karatsuba(a0, b0, p0);
  karatsuba(a1, b1, p2);

  std::vector<Word> sa(hi, 0);
  std::vector<Word> sb(hi, 0);
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = a1[i] ^ (i < lo ? a0[i] : 0);
    sb[i] = b1[i] ^ (i < lo ? b0[i] : 0);
  }
  std::vector<Word> p1(2 * hi, 0);
  karatsuba(sa, sb, p1);
  for (std::size_t i = 0; i < p0.size(); ++i) p1[i] ^= p0[i];
  for (std::size_t i = 0; i < p2.size(); ++i) p1[i] ^= p2[i];

  for (std::size_t i = 0; i < p0.size(); ++i) out[i] ^= p0[i];
  for (std::size_t i = 0; i < p2.size(); ++i) out[2 * lo + i] ^= p2[i];
  for (std::size_t i = 0; i < p1.size() && lo + i < out.size(); ++i) out[lo + i] ^= p1[i];
}

}  // namespace

void mul_accumulate(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) {
  if (a.empty() || b.empty()) return;
  if (a.size() < b.size()) std::swap(a, b);
  // a is the longer operand.
  if (b.size() < kKaratsubaThreshold) {
    schoolbook(a, b, out);
    return;
  }
  const std::size_t block = b.size();
  for (std::size_t start = 0; start < a.size(); start += block) {
    const std::size_t len = std::min(block, a.size() - start);
    if (len == block) {
      karatsuba(a.subspan(start, len), b, out.subspan(start, 2 * block));
    } else {
      mul_accumulate(b, a.subspan(start, len), out.subspan(start, len + block));
    }
  }
}

void xor_shifted(std::vector<Word>& dst, std::span<const Word> src, std::size_t bit_offset) {
  if (src.empty()) return;
  const std::size_t word_shift = bit_offset / kWordBits;
  const unsigned bit_shift = static_cast<unsigned>(bit_offset % kWordBits);
  const std::size_t needed = word_shift + src.size() + (bit_shift != 0 ? 1 : 0);
  if (dst.size() < needed) dst.resize(needed, 0);
  if (bit_shift == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[word_shift + i] ^= src[i];
    return;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[word_shift + i] ^= src[i] << bit_shift;
    dst[word_shift + i + 1] ^= src[i] >> (kWordBits - bit_shift);
  }
}

std::vector<Word> mul_schoolbook(std::span<const Word> a, std::span<const Word> b) {
  std::vector<Word> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size() * kWordBits; ++i) {
    if (((a[i / kWordBits] >> (i % kWordBits)) & 1) == 0) continue;
    for (std::size_t j = 0; j < b.size() * kWordBits; ++j) {
      if (((b[j / kWordBits] >> (j % kWordBits)) & 1) == 0) continue;
      out[(i + j) / kWordBits] ^= Word{1} << ((i + j) % kWordBits);
    }
  }
  return out;
}

}  // namespace detail

PolyZ::PolyZ(std::vector<Word> words) : words_(std::move(words)) { normalize(); }

void PolyZ::normalize() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

PolyZ PolyZ::monomial(std::size_t exponent) {
  PolyZ p;
  p.set_bit(exponent);
  return p;
}

PolyZ PolyZ::from_mask(Word mask) { return PolyZ(std::vector<Word>{mask}); }

PolyZ PolyZ::from_bit_range(std::span<const Word> words, std::size_t offset, std::size_t length) {
  std::vector<Word> out((length + kWordBits - 1) / kWordBits, 0);
  const std::size_t word_shift = offset / kWordBits;
  const unsigned bit_shift = static_cast<unsigned>(offset % kWordBits);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t src = word_shift + i;
    Word w = 0;
    if (src < words.size()) w = words[src] >> bit_shift;
    if (bit_shift != 0 && src + 1 < words.size()) w |= words[src + 1] << (kWordBits - bit_shift);
    out[i] = w;
  }
  const std::size_t tail = length % kWordBits;
  if (tail != 0 && !out.empty()) out.back() &= (Word{1} << tail) - 1;
  return PolyZ(std::move(out));
}

std::int64_t PolyZ::degree() const {
  if (words_.empty()) return kMinusInfinity;
  return static_cast<std::int64_t>((words_.size() - 1) * kWordBits) + 63 -
         std::countl_zero(words_.back());
}

bool PolyZ::bit(std::size_t exponent) const {
  const std::size_t w = exponent / kWordBits;
  if (w >= words_.size()) return false;
  return ((words_[w] >> (exponent % kWordBits)) & 1) != 0;
}

std::size_t PolyZ::popcount() const {
  std::size_t count = 0;
  for (Word w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

void PolyZ::set_bit(std::size_t exponent, bool value) {
  if (bit(exponent) != value) flip_bit(exponent);
}

void PolyZ::flip_bit(std::size_t exponent) {
  const std::size_t w = exponent / kWordBits;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] ^= Word{1} << (exponent % kWordBits);
  normalize();
}

PolyZ& PolyZ::operator+=(const PolyZ& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  normalize();
  return *this;
}

PolyZ& PolyZ::operator*=(const PolyZ& other) {
  *this = *this * other;
  return *this;
}

PolyZ operator+(PolyZ x, const PolyZ& y) {
  x += y;
  return x;
}

PolyZ operator*(const PolyZ& x, const PolyZ& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.is_one()) return y;
  if (y.is_one()) return x;
  std::vector<Word> out(x.word_count() + y.word_count(), 0);
  detail::mul_accumulate(x.words(), y.words(), out);
  return PolyZ(std::move(out));
}

PolyZ PolyZ::shifted(std::int64_t n) const {
  if (is_zero() || n == 0) return *this;
  if (n > 0) {
    std::vector<Word> out;
    detail::xor_shifted(out, words_, static_cast<std::size_t>(n));
    return PolyZ(std::move(out));
  }
  const auto drop = static_cast<std::size_t>(-n);
  if (static_cast<std::int64_t>(drop) > degree()) return {};
  return from_bit_range(words_, drop, static_cast<std::size_t>(degree()) + 1 - drop);
}

PolyZ PolyZ::truncated(std::size_t n) const {
  if (static_cast<std::int64_t>(n) > degree()) return *this;
  return from_bit_range(words_, 0, n);
}

PolyZ PolyZ::square() const {
  std::vector<Word> out(2 * words_.size(), 0);
  auto spread = [](Word half) {
    Word x = half & 0xFFFFFFFFull;
    x = (x | (x << 16)) & 0x0000FFFF0000FFFFull;
    x = (x | (x << 8)) & 0x00FF00FF00FF00FFull;
    x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0Full;
    x = (x | (x << 2)) & 0x3333333333333333ull;
    x = (x | (x << 1)) & 0x5555555555555555ull;
    return x;
  };
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out[2 * i] = spread(words_[i]);
    out[2 * i + 1] = spread(words_[i] >> 32);
  }
  return PolyZ(std::move(out));
}

PolyZ PolyZ::reversed(std::size_t length) const {
  PolyZ out;
  const std::int64_t deg = degree();
  for (std::int64_t e = 0; e <= deg && e < static_cast<std::int64_t>(length); ++e) {
    if (bit(static_cast<std::size_t>(e))) out.set_bit(length - 1 - static_cast<std::size_t>(e));
  }
  return out;
}

std::string PolyZ::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::int64_t e = degree(); e >= 0; --e) {
    if (!bit(static_cast<std::size_t>(e))) continue;
    if (!out.empty()) out += '+';
    if (e == 0) {
      out += '1';
    } else if (e == 1) {
      out += 'z';
    } else {
      out += "z^" + std::to_string(e);
    }
  }
  return out;
}

std::string PolyZ::to_hex() const {
  if (is_zero()) return "0x0";
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string digits;
  const auto nibbles = static_cast<std::size_t>(degree()) / 4 + 1;
  for (std::size_t i = nibbles; i-- > 0;) {
    const Word w = words_[(4 * i) / kWordBits] >> ((4 * i) % kWordBits);
    digits += kDigits[w & 0xF];
  }
  if (digits.size() % 2 == 1) digits.insert(digits.begin(), '0');
  return "0x" + digits;
}

std::uint64_t PolyZ::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Word w : words_) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (w >> (8 * byte)) & 0xFF;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) == 0) out += c;
  }
  return out;
}

std::size_t parse_unsigned(std::string_view digits, std::string_view whole) {
  std::size_t value = 0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || digits.empty()) {
    throw ParseError("bad exponent in polynomial '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

PolyZ PolyZ::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty polynomial");
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    PolyZ out;
    std::size_t exponent = 0;
    for (std::size_t i = s.size(); i-- > 2;) {
      const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(s[i])));
      int v;
      if (c >= '0' && c <= '9') {
        v = c - '0';
      } else if (c >= 'A' && c <= 'F') {
        v = 10 + c - 'A';
      } else {
        throw ParseError("bad hex digit in '" + s + "'");
      }
      for (int b = 0; b < 4; ++b) {
        if ((v >> b) & 1) out.flip_bit(exponent + static_cast<std::size_t>(b));
      }
      exponent += 4;
    }
    return out;
  }
  PolyZ out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    const std::string_view term(s.data() + start, end - start);
    if (term.empty()) throw ParseError("empty term in '" + s + "'");
    if (term == "0") {
      // contributes nothing
    } else if (term == "1") {
      out.flip_bit(0);
    } else if (term[0] == 'z' || term[0] == 'x') {
      if (term.size() == 1) {
        out.flip_bit(1);
      } else if (term[1] == '^') {
        out.flip_bit(parse_unsigned(term.substr(2), s));
      } else {
        throw ParseError("bad term '" + std::string(term) + "'");
      }
    } else {
      throw ParseError("bad term '" + std::string(term) + "'");
    }
    start = end + 1;
    if (end == s.size()) break;
  }
  return out;
}

DivRem divrem(const PolyZ& x, const PolyZ& y) {
  if (y.is_zero()) throw DivisionByZero();
  const std::int64_t dx = x.degree();
  const std::int64_t dy = y.degree();
  if (dx < dy) return {PolyZ{}, x};
  if (dy == 0) return {x, PolyZ{}};

  std::vector<Word> rem(x.words().begin(), x.words().end());
  const auto qlen = static_cast<std::size_t>(dx - dy) + 1;
  std::vector<Word> quot((qlen + kWordBits - 1) / kWordBits, 0);

  // Precomputed shifts of y by 0..63 bits pay off once the quotient is long.
  const bool precompute = qlen > 2 * kWordBits;
  std::vector<std::vector<Word>> shifts;
  if (precompute) {
    shifts.resize(kWordBits);
    for (std::size_t s = 0; s < kWordBits; ++s) detail::xor_shifted(shifts[s], y.words(), s);
  }
  const auto yspan = y.words();
  for (std::size_t i = qlen; i-- > 0;) {
    const std::size_t pos = i + static_cast<std::size_t>(dy);
    if (((rem[pos / kWordBits] >> (pos % kWordBits)) & 1) == 0) continue;
    quot[i / kWordBits] |= Word{1} << (i % kWordBits);
    if (precompute) {
      const auto& sh = shifts[i % kWordBits];
      const std::size_t base = i / kWordBits;
      for (std::size_t k = 0; k < sh.size() && base + k < rem.size(); ++k) rem[base + k] ^= sh[k];
    } else {
      detail::xor_shifted(rem, yspan, i);
    }
  }
  return {PolyZ(std::move(quot)), PolyZ(std::move(rem))};
}

PolyZ exact_div(const PolyZ& x, const PolyZ& y) {
  auto [q, r] = divrem(x, y);
  if (!r.is_zero()) throw InvalidArgument("exact_div: nonzero remainder");
  return q;
}

PolyZ gcd(PolyZ x, PolyZ y) {
  while (!y.is_zero()) {
    PolyZ r = divrem(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

PolyZ pow(const PolyZ& x, std::uint64_t n) {
  PolyZ result = PolyZ::one();
  PolyZ base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base.square();
  }
  return result;
}

PolyZ derivative(const PolyZ& x) {
  std::vector<Word> out(x.words().begin(), x.words().end());
  for (Word& w : out) w &= 0xAAAAAAAAAAAAAAAAull;
  return PolyZ(std::move(out)).shifted(-1);
}

PolyZ sqrt(const PolyZ& x) {
  for (Word w : x.words()) {
    if ((w & 0xAAAAAAAAAAAAAAAAull) != 0) throw NotASquare("polynomial has odd-exponent terms");
  }
  auto compress = [](Word w) {
    w &= 0x5555555555555555ull;
    w = (w | (w >> 1)) & 0x3333333333333333ull;
    w = (w | (w >> 2)) & 0x0F0F0F0F0F0F0F0Full;
    w = (w | (w >> 4)) & 0x00FF00FF00FF00FFull;
    w = (w | (w >> 8)) & 0x0000FFFF0000FFFFull;
    w = (w | (w >> 16)) & 0x00000000FFFFFFFFull;
    return w;
  };
  const auto in = x.words();
  std::vector<Word> out((in.size() + 1) / 2, 0);
  for (std::size_t i = 0; i < in.size(); ++i) out[i / 2] |= compress(in[i]) << (32 * (i % 2));
  return PolyZ(std::move(out));
}

}  // namespace tmcf

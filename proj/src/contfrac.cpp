#include "tmcf/contfrac.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"
#include "tmcf/errors.hpp"

namespace tmcf {

std::int64_t PQStream::degree_sum(std::size_t k) const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < k && i < quotients.size(); ++i) sum += quotients[i].degree();
  return sum;
}

Expansion cf_expand(const LaurentZ& x, std::size_t count) {
  Expansion out;
  if (x.is_exact()) {
    if (x.is_zero() || x.low() >= 0) {
      out.stream.a0 = x.is_zero() ? PolyZ() : x.body().shifted(x.low());
      out.status = ExpandStatus::finite;
      return out;
    }
  } else if (x.horizon() > 0) {
    throw PrecisionExhausted("cf_expand: integral part lies below the horizon " + std::to_string(x.horizon()));
  }

  // x agrees on its trusted range with num / z^shift.
  const std::int64_t shift = x.is_exact() ? -x.low() : -x.horizon();
  // Budget on 2 deg q_n; unlimited for exact input.
  const std::int64_t budget = x.is_exact() ? std::numeric_limits<std::int64_t>::max() : -x.horizon();

  PolyZ num = x.is_zero() ? PolyZ() : x.body().shifted(x.low() + shift);
  PolyZ den = PolyZ::monomial(static_cast<std::size_t>(shift));
  auto [a0, rem] = divrem(num, den);
  out.stream.a0 = std::move(a0);
  num = std::move(den);
  den = std::move(rem);

  std::int64_t deg_q = 0;
  while (out.stream.size() < count) {
    if (den.is_zero()) {
      out.status = x.is_exact() ? ExpandStatus::finite : ExpandStatus::horizon_exhausted;
      return out;
    }
    auto [quotient, remainder] = divrem(num, den);
    deg_q += quotient.degree();
    if (2 * deg_q > budget) {
      out.status = ExpandStatus::horizon_exhausted;
      return out;
    }
    out.stream.quotients.push_back(std::move(quotient));
    num = std::move(den);
    den = std::move(remainder);
  }
  out.status = ExpandStatus::complete;
  return out;
}

Mat2<PolyZ> quotient_matrix(const PolyZ& a) { return {a, PolyZ::one(), PolyZ::one(), PolyZ()}; }

namespace {

ConvergentPair from_matrix(const Mat2<PolyZ>& m, std::size_t k) {
  return {m.m00, m.m10, m.m01, m.m11, k};
}

void check_index(const PQStream& s, std::size_t k) {
  if (k > s.size()) {
    throw InvalidArgument("convergent index " + std::to_string(k) + " exceeds stream length " +
                          std::to_string(s.size()));
  }
}

}  // namespace

ConvergentPair cf_convergents(const PQStream& s, std::size_t k) {
  check_index(s, k);
  const auto m = product_tree<PolyZ>(0, k + 1, [&](std::size_t i) { return quotient_matrix(s[i]); });
  return from_matrix(m, k);
}

ConvergentPair cf_convergents_sequential(const PQStream& s, std::size_t k) {
  check_index(s, k);
  Mat2<PolyZ> m = quotient_matrix(s.a0);
  for (std::size_t i = 1; i <= k; ++i) m = m * quotient_matrix(s[i]);
  return from_matrix(m, k);
}

LaurentZ cf_eval(const PQStream& s, std::int64_t precision) {
  if (precision < 0) throw InvalidArgument("cf_eval: negative precision");
  // deg q_k is the running degree sum; pick the first k with 2 deg q_k >= precision.
  std::int64_t deg_q = 0;
  std::size_t k = 0;
  while (2 * deg_q < precision) {
    if (k == s.size()) {
      throw PrecisionExhausted("cf_eval: stream of " + std::to_string(s.size()) +
                               " quotients reaches 2 deg q = " + std::to_string(2 * deg_q) +
                               " < precision " + std::to_string(precision));
    }
    deg_q += s.quotients[k].degree();
    ++k;
  }
  const ConvergentPair c = cf_convergents(s, k);
  return LaurentZ::from_rational(c.p, c.q, precision);
}

TMWord::TMWord(PolyZ a, PolyZ b, std::vector<bool> letters)
    : a_(std::move(a)), b_(std::move(b)), letters_(std::move(letters)) {}

bool TMWord::is_palindrome(std::size_t prefix_length) const {
  if (prefix_length > letters_.size()) throw InvalidArgument("is_palindrome: prefix longer than word");
  for (std::size_t i = 0, j = prefix_length; i + 1 < j; ++i, --j) {
    if (letters_[i] != letters_[j - 1]) return false;
  }
  return true;
}

std::string TMWord::to_string() const {
  std::string s;
  s.reserve(letters_.size());
  for (bool l : letters_) s.push_back(l ? 'b' : 'a');
  return s;
}

PQStream TMWord::to_stream() const {
  PQStream s;
  s.quotients.reserve(letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i) s.quotients.push_back(symbol(i));
  return s;
}

TMWord tm_prefix(std::size_t n, const PolyZ& a, const PolyZ& b) {
  if (n == 0) throw InvalidArgument("tm_prefix: length must be positive");
  std::vector<bool> t(n);
  for (std::size_t k = 1; k < n; ++k) t[k] = (k % 2 == 0) ? t[k / 2] : !t[k / 2];
  return TMWord(a, b, std::move(t));
}

ConvergentPair tm_convergent(const PolyZ& a, const PolyZ& b, unsigned levels) {
  const auto m = tm_block_product(quotient_matrix(a), quotient_matrix(b), levels).first;
  // With a0 = 0 the product over the word alone is [[q_k, q_{k-1}], [p_k, p_{k-1}]].
  return {m.m10, m.m00, m.m11, m.m01, std::size_t{1} << (2 * levels)};
}

Spectrum spectrum_window(const PQStream& s, std::size_t window) {
  if (window > s.size()) {
    throw InvalidArgument("spectrum window " + std::to_string(window) + " exceeds stream length " +
                          std::to_string(s.size()));
  }
  Spectrum out;
  for (std::size_t i = 0; i < window; ++i) {
    const std::int64_t d = s.quotients[i].degree();
    ++out.histogram[d];
    out.max_degree = std::max(out.max_degree, d);
  }
  return out;
}

std::string stream_to_json(const PQStream& s) {
  nlohmann::json arr = nlohmann::json::array();
  arr.push_back(s.a0.to_string());
  for (const auto& q : s.quotients) arr.push_back(q.to_string());
  return arr.dump();
}

PQStream stream_from_json(std::string_view text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("stream JSON: ") + e.what());
  }
  if (!arr.is_array() || arr.empty()) throw ParseError("stream JSON must be a non-empty array");
  PQStream s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) throw ParseError("stream JSON entries must be polynomial strings");
    PolyZ p = PolyZ::parse(arr[i].get<std::string>());
    if (i == 0) {
      s.a0 = std::move(p);
    } else {
      if (p.degree() < 1) throw ParseError("partial quotient " + std::to_string(i) + " is constant");
      s.quotients.push_back(std::move(p));
    }
  }
  return s;
}

}  // namespace tmcf

#include "tmcf/bipoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <map>

#include "tmcf/errors.hpp"

namespace tmcf {

namespace {

// Operands with at most this many terms multiply by shift-and-add.
constexpr std::size_t kSparseTerms = 16;

std::size_t lowest_bit(const PolyZ& p) {
  std::size_t count = 0;
  for (Word w : p.words()) {
    if (w != 0) return count + static_cast<std::size_t>(std::countr_zero(w));
    count += kWordBits;
  }
  return count;
}

void add_row(std::vector<PolyZ>& rows, std::size_t i, const PolyZ& p) {
  if (p.is_zero()) return;
  if (rows.size() <= i) rows.resize(i + 1);
  rows[i] += p;
}

BiPoly sparse_mul(const BiPoly& sparse, const BiPoly& dense) {
  std::vector<PolyZ> rows;
  rows.reserve(sparse.rows().size() + dense.rows().size());
  for (std::size_t i = 0; i < sparse.rows().size(); ++i) {
    const PolyZ& srow = sparse.rows()[i];
    if (srow.is_zero()) continue;
    for (std::size_t j = 0; j <= static_cast<std::size_t>(srow.degree()); ++j) {
      if (!srow.bit(j)) continue;
      for (std::size_t r = 0; r < dense.rows().size(); ++r) {
        add_row(rows, r + i, dense.rows()[r].shifted(static_cast<std::int64_t>(j)));
      }
    }
  }
  return BiPoly(std::move(rows));
}

}  // namespace

BiPoly::BiPoly(std::vector<PolyZ> rows) : rows_(std::move(rows)) { trim(); }

void BiPoly::trim() {
  while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
}

BiPoly BiPoly::tau() { return one() + a() + b(); }

BiPoly BiPoly::monomial(std::int64_t i, std::int64_t j) {
  if (i < 0 || j < 0) throw InvalidArgument("BiPoly::monomial: negative exponent");
  std::vector<PolyZ> rows(static_cast<std::size_t>(i) + 1);
  rows.back() = PolyZ::monomial(static_cast<std::size_t>(j));
  return BiPoly(std::move(rows));
}

BiPoly BiPoly::from_support(const std::vector<Exponents>& support) {
  std::vector<PolyZ> rows;
  for (const auto& e : support) {
    if (e.a < 0 || e.b < 0) throw InvalidArgument("BiPoly::from_support: negative exponent");
    const auto i = static_cast<std::size_t>(e.a);
    if (rows.size() <= i) rows.resize(i + 1);
    rows[i].flip_bit(static_cast<std::size_t>(e.b));
  }
  return BiPoly(std::move(rows));
}

bool BiPoly::is_one() const { return rows_.size() == 1 && rows_[0].is_one(); }

std::int64_t BiPoly::deg_a() const {
  if (rows_.empty()) return kMinusInfinity;
  return static_cast<std::int64_t>(rows_.size()) - 1;
}

std::int64_t BiPoly::deg_b() const {
  std::int64_t d = kMinusInfinity;
  for (const auto& r : rows_) d = std::max(d, r.degree());
  return d;
}

std::int64_t BiPoly::total_degree() const {
  std::int64_t d = kMinusInfinity;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i].is_zero()) d = std::max(d, static_cast<std::int64_t>(i) + rows_[i].degree());
  }
  return d;
}

std::int64_t BiPoly::val_a() const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!rows_[i].is_zero()) return static_cast<std::int64_t>(i);
  }
  return kMinusInfinity;
}

std::int64_t BiPoly::val_b() const {
  if (rows_.empty()) return kMinusInfinity;
  std::size_t v = std::numeric_limits<std::size_t>::max();
  for (const auto& r : rows_) {
    if (!r.is_zero()) v = std::min(v, lowest_bit(r));
  }
  return static_cast<std::int64_t>(v);
}

bool BiPoly::coefficient(std::int64_t i, std::int64_t j) const {
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= rows_.size()) return false;
  return rows_[static_cast<std::size_t>(i)].bit(static_cast<std::size_t>(j));
}

std::size_t BiPoly::term_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.popcount();
  return n;
}

std::vector<Exponents> BiPoly::support() const {
  std::vector<Exponents> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    for (std::int64_t j = 0; j <= r.degree(); ++j) {
      if (r.bit(static_cast<std::size_t>(j))) out.push_back({static_cast<std::int64_t>(i), j});
    }
  }
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& other) {
  if (rows_.size() < other.rows_.size()) rows_.resize(other.rows_.size());
  for (std::size_t i = 0; i < other.rows_.size(); ++i) rows_[i] += other.rows_[i];
  trim();
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& other) {
  *this = *this * other;
  return *this;
}

BiPoly BiPoly::square() const {
  std::vector<PolyZ> rows(rows_.empty() ? 0 : 2 * rows_.size() - 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) rows[2 * i] = rows_[i].square();
  return BiPoly(std::move(rows));
}

BiPoly BiPoly::swapped() const {
  const std::int64_t db = deg_b();
  if (db == kMinusInfinity) return {};
  std::vector<PolyZ> rows(static_cast<std::size_t>(db) + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    for (std::int64_t j = 0; j <= r.degree(); ++j) {
      if (r.bit(static_cast<std::size_t>(j))) rows[static_cast<std::size_t>(j)].flip_bit(i);
    }
  }
  return BiPoly(std::move(rows));
}

BiPoly BiPoly::shifted(std::int64_t i, std::int64_t j) const {
  if (i < 0 || j < 0) throw InvalidArgument("BiPoly::shifted: negative shift");
  if (rows_.empty()) return {};
  std::vector<PolyZ> rows(static_cast<std::size_t>(i) + rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) rows[r + static_cast<std::size_t>(i)] = rows_[r].shifted(j);
  return BiPoly(std::move(rows));
}

std::optional<BiPoly> BiPoly::divided_by_monomial(std::int64_t i, std::int64_t j) const {
  if (rows_.empty()) return BiPoly{};
  if (val_a() < i || val_b() < j) return std::nullopt;
  std::vector<PolyZ> rows(rows_.size() - static_cast<std::size_t>(i));
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = rows_[r + static_cast<std::size_t>(i)].shifted(-j);
  return BiPoly(std::move(rows));
}

BiPoly BiPoly::flipped(std::int64_t da, std::int64_t db) const {
  if (rows_.empty()) return {};
  if (da < deg_a() || db < deg_b()) throw InvalidArgument("BiPoly::flipped: window smaller than degree");
  std::vector<PolyZ> rows(static_cast<std::size_t>(da) + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    rows[static_cast<std::size_t>(da) - i] = rows_[i].reversed(static_cast<std::size_t>(db) + 1);
  }
  return BiPoly(std::move(rows));
}

BiPoly BiPoly::truncated_total(std::int64_t cap) const {
  if (cap < 0) return {};
  std::vector<PolyZ> rows;
  for (std::size_t i = 0; i < rows_.size() && static_cast<std::int64_t>(i) <= cap; ++i) {
    rows.push_back(rows_[i].truncated(static_cast<std::size_t>(cap - static_cast<std::int64_t>(i)) + 1));
  }
  return BiPoly(std::move(rows));
}

std::string BiPoly::to_string() const {
  if (rows_.empty()) return "0";
  std::string out;
  for (std::size_t i = rows_.size(); i-- > 0;) {
    const auto& r = rows_[i];
    for (std::int64_t j = r.degree(); j >= 0; --j) {
      if (!r.bit(static_cast<std::size_t>(j))) continue;
      if (!out.empty()) out += '+';
      std::string term;
      if (i > 0) term += i == 1 ? "a" : "a^" + std::to_string(i);
      if (j > 0) {
        if (!term.empty()) term += '*';
        term += j == 1 ? "b" : "b^" + std::to_string(j);
      }
      out += term.empty() ? "1" : term;
    }
  }
  return out;
}

std::string BiPoly::to_csv() const {
  std::string out;
  for (const auto& e : support()) out += std::to_string(e.a) + "," + std::to_string(e.b) + "\n";
  return out;
}

std::uint64_t BiPoly::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& r : rows_) {
    h ^= r.digest();
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::int64_t parse_exponent(std::string_view term, std::size_t& pos) {
  if (pos >= term.size() || term[pos] != '^') return 1;
  ++pos;
  std::size_t end = pos;
  while (end < term.size() && std::isdigit(static_cast<unsigned char>(term[end])) != 0) ++end;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(term.data() + pos, term.data() + end, value);
  if (ec != std::errc() || pos == end) throw ParseError("bad exponent in '" + std::string(term) + "'");
  pos = end;
  return value;
}

Exponents parse_term(std::string_view term) {
  if (term == "1") return {0, 0};
  Exponents e;
  std::size_t pos = 0;
  bool any = false;
  while (pos < term.size()) {
    const char c = term[pos];
    if (c == '*') {
      ++pos;
      continue;
    }
    if (c != 'a' && c != 'b') throw ParseError("bad term '" + std::string(term) + "'");
    ++pos;
    const std::int64_t k = parse_exponent(term, pos);
    (c == 'a' ? e.a : e.b) += k;
    any = true;
  }
  if (!any) throw ParseError("bad term '" + std::string(term) + "'");
  return e;
}

}  // namespace

BiPoly BiPoly::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) == 0) s += c;
  }
  if (s.empty()) throw ParseError("empty bivariate polynomial");
  BiPoly out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find('+', start);
    if (end == std::string::npos) end = s.size();
    const std::string_view term(s.data() + start, end - start);
    if (term.empty()) throw ParseError("empty term in '" + s + "'");
    if (term != "0") {
      const Exponents e = parse_term(term);
      out += monomial(e.a, e.b);
    }
    if (end == s.size()) break;
    start = end + 1;
  }
  return out;
}

BiPoly BiPoly::parse_csv(std::string_view text) {
  BiPoly out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; }),
               line.end());
    if (line.empty() || line[0] == '#') continue;
    // Tolerate "(i,j)" rows as well as "i,j".
    if (line.front() == '(' && line.back() == ')') line = line.substr(1, line.size() - 2);
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("bad CSV row '" + line + "'");
    std::int64_t i = 0;
    std::int64_t j = 0;
    auto r1 = std::from_chars(line.data(), line.data() + comma, i);
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), j);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r2.ptr != line.data() + line.size()) {
      throw ParseError("bad CSV row '" + line + "'");
    }
    out += monomial(i, j);
  }
  return out;
}

BiPoly operator+(BiPoly x, const BiPoly& y) {
  x += y;
  return x;
}

PolyZ kronecker_pack(const BiPoly& x, std::size_t gap) {
  std::vector<Word> out;
  const auto& rows = x.rows();
  if (rows.empty()) return {};
  out.reserve((rows.size() * gap) / kWordBits + 2);
  for (std::size_t i = 0; i < rows.size(); ++i) detail::xor_shifted(out, rows[i].words(), i * gap);
  return PolyZ(std::move(out));
}

BiPoly kronecker_unpack(const PolyZ& packed, std::size_t gap) {
  if (packed.is_zero()) return {};
  const auto bits = static_cast<std::size_t>(packed.degree()) + 1;
  const std::size_t nrows = (bits + gap - 1) / gap;
  std::vector<PolyZ> rows(nrows);
  for (std::size_t i = 0; i < nrows; ++i) rows[i] = PolyZ::from_bit_range(packed.words(), i * gap, gap);
  return BiPoly(std::move(rows));
}

BiPoly operator*(const BiPoly& x, const BiPoly& y) {
  if (x.is_zero() || y.is_zero()) return {};
  if (x.is_one()) return y;
  if (y.is_one()) return x;
  const std::size_t tx = x.term_count();
  const std::size_t ty = y.term_count();
  if (tx <= kSparseTerms || ty <= kSparseTerms) return tx <= ty ? sparse_mul(x, y) : sparse_mul(y, x);
  const auto gap = std::bit_ceil(static_cast<std::size_t>(x.deg_b() + y.deg_b()) + 1);
  return kronecker_unpack(kronecker_pack(x, gap) * kronecker_pack(y, gap), gap);
}

BiPoly bipoly_mul(const BiPoly& x, const BiPoly& y) { return x * y; }

BiPoly bipoly_mul_naive(const BiPoly& x, const BiPoly& y) {
  std::map<Exponents, bool> acc;
  for (const auto& ex : x.support()) {
    for (const auto& ey : y.support()) {
      auto& bit = acc[{ex.a + ey.a, ex.b + ey.b}];
      bit = !bit;
    }
  }
  std::vector<Exponents> support;
  for (const auto& [e, bit] : acc) {
    if (bit) support.push_back(e);
  }
  return BiPoly::from_support(support);
}

BiPoly pow(const BiPoly& x, std::uint64_t n) {
  BiPoly result = BiPoly::one();
  BiPoly base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base.square();
  }
  return result;
}

BiPoly bipoly_swap(const BiPoly& x) { return x.swapped(); }

PolyZ bipoly_subst(const BiPoly& x, const PolyZ& pa, const PolyZ& pb) {
  auto eval_row = [&pb](const PolyZ& row) {
    PolyZ acc;
    for (std::int64_t j = row.degree(); j >= 0; --j) {
      acc = acc * pb;
      if (row.bit(static_cast<std::size_t>(j))) acc += PolyZ::one();
    }
    return acc;
  };
  PolyZ acc;
  const auto& rows = x.rows();
  for (std::size_t i = rows.size(); i-- > 0;) acc = acc * pa + eval_row(rows[i]);
  return acc;
}

std::pair<BiPoly, BiPoly> divrem_tau(const BiPoly& x) {
  // tau = a + c with c = 1 + b, monic in a: synthetic division on the rows.
  const auto& r = x.rows();
  if (r.size() <= 1) return {BiPoly{}, x};
  auto times_c = [](const PolyZ& p) { return p + p.shifted(1); };
  const std::size_t n = r.size() - 1;
  std::vector<PolyZ> q(n);
  q[n - 1] = r[n];
  for (std::size_t i = n - 1; i >= 1; --i) q[i - 1] = r[i] + times_c(q[i]);
  PolyZ rem = r[0] + times_c(q[0]);
  return {BiPoly(std::move(q)), BiPoly(std::vector<PolyZ>{std::move(rem)})};
}

std::pair<std::int64_t, BiPoly> strip_tau(const BiPoly& x) {
  if (x.is_zero()) throw InvalidArgument("strip_tau: zero polynomial");
  std::int64_t e = 0;
  BiPoly cur = x;
  while (true) {
    auto [q, rem] = divrem_tau(cur);
    if (!rem.is_zero()) break;
    cur = std::move(q);
    ++e;
  }
  return {e, cur};
}

SymMat2 swapped(const SymMat2& m) { return {m.m00.swapped(), m.m01.swapped(), m.m10.swapped(), m.m11.swapped()}; }

BiPoly bipoly_mat_det(const SquareMatrix<BiPoly>& m) {
  const std::size_t n = m.size();
  if (n > kCofactorLimit) {
    throw SizeLimit("cofactor determinant limited to size " + std::to_string(kCofactorLimit) + ", got " +
                    std::to_string(n));
  }
  if (n == 0) return BiPoly::one();
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<BiPoly> minor(full + 1);
  minor[full] = BiPoly::one();
  // minor[mask] = determinant of rows popcount(mask).. against the columns not in mask.
  for (std::size_t mask = full; mask-- > 0;) {
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    BiPoly acc;
    for (std::size_t c = 0; c < n; ++c) {
      if ((mask >> c) & 1) continue;
      const BiPoly& entry = m(row, c);
      const BiPoly& rest = minor[mask | (std::size_t{1} << c)];
      if (entry.is_zero() || rest.is_zero()) continue;
      acc += entry * rest;
    }
    minor[mask] = std::move(acc);
  }
  return minor[0];
}

BiPoly bipoly_det_bareiss(const SquareMatrix<BiPoly>& m) {
  const std::size_t n = m.size();
  if (n == 0) return BiPoly::one();
  std::int64_t max_deg_b = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) max_deg_b = std::max(max_deg_b, m(r, c).deg_b());
  }
  // Every minor has b-degree at most n * max_deg_b.
  const auto gap = std::bit_ceil(static_cast<std::size_t>(max_deg_b) * n + 1);
  SquareMatrix<PolyZ> w(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) w(r, c) = kronecker_pack(m(r, c), gap);
  }
  PolyZ previous = PolyZ::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && w(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return {};
      for (std::size_t c = 0; c < n; ++c) std::swap(w(k, c), w(pivot, c));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        w(i, j) = exact_div(w(k, k) * w(i, j) + w(i, k) * w(k, j), previous);
      }
      w(i, k) = PolyZ{};
    }
    previous = w(k, k);
  }
  return kronecker_unpack(w(n - 1, n - 1), gap);
}

}  // namespace tmcf

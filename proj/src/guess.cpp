#include "tmcf/guess.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tmcf/analysis.hpp"
#include "tmcf/errors.hpp"

namespace tmcf {

namespace {

std::vector<LaurentZ> powers_of(const LaurentZ& x, int r) {
  std::vector<LaurentZ> out{LaurentZ::from_poly(PolyZ::one())};
  for (int j = 1; j <= r; ++j) out.push_back(j % 2 == 0 ? series_square(out[j / 2]) : out.back() * x);
  return out;
}

LaurentZ relation_value(const std::vector<LaurentZ>& powers, const std::vector<PolyZ>& coeffs) {
  LaurentZ sum;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (!coeffs[j].is_zero()) sum = sum + coeffs[j] * powers[j];
  }
  return sum;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

RelationSystem relation_system(const LaurentZ& x, int relation_degree, std::int64_t degree_bound,
                               std::int64_t equations) {
  if (relation_degree < 1) throw InvalidArgument("relation degree must be at least 1");
  if (degree_bound < 0 || equations < 1) throw InvalidArgument("degree bound and equation count must be positive");
  const auto r = static_cast<std::size_t>(relation_degree);
  const auto width = static_cast<std::size_t>(degree_bound + 1);
  const std::vector<LaurentZ> powers = powers_of(x, relation_degree);
  const std::int64_t lead = x.is_zero() ? 0 : std::max<std::int64_t>(0, x.top());

  RelationSystem sys;
  sys.relation_degree = relation_degree;
  sys.degree_bound = degree_bound;
  sys.equations = equations;
  sys.top_exponent = degree_bound + relation_degree * lead;
  sys.matrix = BitMatrix(static_cast<std::size_t>(equations), width * (r + 1));
  for (std::int64_t row = 0; row < equations; ++row) {
    const std::int64_t e = sys.top_exponent - row;
    for (std::size_t i = 0; i < width; ++i) {
      for (std::size_t j = 0; j <= r; ++j) {
        const std::int64_t need = e - static_cast<std::int64_t>(i);
        const bool bit = j == 0 ? need == 0 : powers[j].coefficient(need);
        if (bit) sys.matrix.set(static_cast<std::size_t>(row), i * (r + 1) + j);
      }
    }
  }
  return sys;
}

BitVector encode_relation(const std::vector<PolyZ>& coeffs, int relation_degree, std::int64_t degree_bound) {
  const auto r = static_cast<std::size_t>(relation_degree);
  BitVector v(static_cast<std::size_t>(degree_bound + 1) * (r + 1));
  for (std::size_t j = 0; j < coeffs.size() && j <= r; ++j) {
    if (coeffs[j].degree() > degree_bound) throw InvalidArgument("coefficient exceeds the degree bound");
    for (std::int64_t i = 0; i <= coeffs[j].degree(); ++i) {
      if (coeffs[j].bit(static_cast<std::size_t>(i))) v.set(static_cast<std::size_t>(i) * (r + 1) + j);
    }
  }
  return v;
}

std::vector<PolyZ> decode_relation(const BitVector& v, int relation_degree, std::int64_t degree_bound) {
  const auto r = static_cast<std::size_t>(relation_degree);
  std::vector<PolyZ> out(r + 1);
  for (std::size_t i = 0; i <= static_cast<std::size_t>(degree_bound); ++i) {
    for (std::size_t j = 0; j <= r; ++j) {
      if (v.get(i * (r + 1) + j)) out[j].set_bit(i);
    }
  }
  return out;
}

RelationGuess guess_relation(const LaurentZ& x, int relation_degree, std::int64_t degree_bound,
                             std::int64_t equations) {
  RelationSystem sys = relation_system(x, relation_degree, degree_bound, equations);
  const std::size_t unknowns = sys.matrix.cols();
  const Kernel k = kernel(std::move(sys.matrix));
  if (k.basis.empty()) {
    throw EmptyKernel("no relation of degree " + std::to_string(relation_degree) + " with coefficient degree <= " +
                      std::to_string(degree_bound) + " (" + std::to_string(equations) + " equations, " +
                      std::to_string(unknowns) + " unknowns)");
  }
  // Each basis vector tops out at its free column, and free columns are
  // distinct, so the vectors of degree <= e are spanned by the basis vectors
  // whose free column lies in the first (e+1)(r+1) columns.
  const std::size_t stride = static_cast<std::size_t>(relation_degree) + 1;
  const auto lowest = std::min_element(k.free_columns.begin(), k.free_columns.end());
  const std::size_t e = *lowest / stride;
  const auto same_degree = std::count_if(k.free_columns.begin(), k.free_columns.end(),
                                         [&](std::size_t f) { return f / stride == e; });
  if (same_degree > 1) {
    throw AmbiguousKernel(std::to_string(same_degree) + " independent relations of least degree " + std::to_string(e));
  }
  RelationGuess g;
  g.coeffs = decode_relation(k.basis[static_cast<std::size_t>(lowest - k.free_columns.begin())], relation_degree,
                             degree_bound);
  g.min_degree = static_cast<std::int64_t>(e);
  g.kernel_dimension = k.basis.size();
  return g;
}

std::vector<PolyZ> primitive_part(const std::vector<PolyZ>& coeffs) {
  PolyZ g;
  for (const PolyZ& c : coeffs) g = gcd(g, c);
  if (g.is_zero()) throw InvalidArgument("primitive part of the zero relation");
  std::vector<PolyZ> out;
  for (const PolyZ& c : coeffs) out.push_back(c.is_zero() ? c : exact_div(c, g));
  return out;
}

GuessProblem default_problem(const PolyZ& a, const PolyZ& b) {
  GuessProblem p{a, b, 4 * (a.degree() + b.degree()), 0};
  p.precision = 5 * (p.degree_bound + 1) + 64;
  return p;
}

GuessResult guess_quartic(const GuessProblem& p) {
  const QuarticInstance inst = make_instance(p.a, p.b);
  if (p.degree_bound < 0) throw InvalidArgument("guess: negative degree bound");
  if (p.precision < 5 * (p.degree_bound + 1) + kGuessSafetyMargin) {
    throw InvalidArgument("guess: precision " + std::to_string(p.precision) + " below 5(D+1) + " +
                          std::to_string(kGuessSafetyMargin));
  }
  GuessResult r;
  r.problem = p;
  const LaurentZ xi = xi_series(p.a, p.b, p.precision);
  const RelationGuess g = guess_relation(xi, 4, p.degree_bound, p.precision);
  std::copy(g.coeffs.begin(), g.coeffs.end(), r.B.begin());
  r.min_degree = g.min_degree;
  r.kernel_dimension = g.kernel_dimension;

  const LaurentZ fresh = xi_series(p.a, p.b, 2 * p.precision);
  const LaurentZ value = relation_value(powers_of(fresh, 4), g.coeffs);
  r.fresh_residual_zero = value.is_zero();
  r.vanishing_order = value.is_zero() ? -value.horizon() : -(value.top() + 1);

  const std::vector<PolyZ> closed(inst.A.begin(), inst.A.end());
  r.matches_closed_form = primitive_part(g.coeffs) == primitive_part(closed);
  return r;
}

Certificate guess_certificate(const GuessResult& r) {
  const GuessProblem& p = r.problem;
  CertificateBuilder c("guess[a=" + p.a.to_string() + ",b=" + p.b.to_string() + "]");
  c.param("a", p.a.to_string()).param("b", p.b.to_string());
  c.param("degree_bound", p.degree_bound).param("precision", p.precision);
  c.param("min_degree", r.min_degree).param("kernel_dimension", static_cast<std::int64_t>(r.kernel_dimension));
  c.param("vanishing_order", r.vanishing_order);
  for (std::size_t j = 0; j < 5; ++j) c.param("B_" + std::to_string(j), r.B[j].to_string());
  const LaurentZ fresh = xi_series(p.a, p.b, 2 * p.precision);
  add_relation_residual(c, "sum_j B_j xi^j at precision 2N", fresh, std::vector<PolyZ>(r.B.begin(), r.B.end()));
  c.check("vanishes on at least N coefficients", r.vanishing_order + p.degree_bound + 1 >= p.precision);
  c.check("primitive part equals the closed-form quartic", r.matches_closed_form);
  return c.finish();
}

nlohmann::json guess_to_json(const GuessResult& r) {
  const GuessProblem& p = r.problem;
  nlohmann::json j;
  j["schema"] = "tmcf-guess/1";
  j["a"] = p.a.to_string();
  j["b"] = p.b.to_string();
  j["degree_bound"] = p.degree_bound;
  j["precision"] = p.precision;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const PolyZ& c : r.B) coeffs.push_back(c.to_hex());
  j["coefficients_hex"] = coeffs;
  nlohmann::json readable = nlohmann::json::array();
  for (const PolyZ& c : r.B) readable.push_back(c.to_string());
  j["coefficients"] = readable;
  j["min_degree"] = r.min_degree;
  j["kernel_dimension"] = r.kernel_dimension;
  j["vanishing_order"] = r.vanishing_order;
  j["fresh_residual_zero"] = r.fresh_residual_zero;
  j["matches_closed_form"] = r.matches_closed_form;
  j["A3_equals_A1"] = r.B[3] == r.B[1];
  return j;
}

GuessResult guess_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema") != "tmcf-guess/1") throw ParseError("unknown guess certificate schema");
    GuessResult r;
    r.problem.a = PolyZ::parse(j.at("a").get<std::string>());
    r.problem.b = PolyZ::parse(j.at("b").get<std::string>());
    r.problem.degree_bound = j.at("degree_bound").get<std::int64_t>();
    r.problem.precision = j.at("precision").get<std::int64_t>();
    const auto& coeffs = j.at("coefficients_hex");
    if (coeffs.size() != 5) throw ParseError("guess certificate needs five coefficients");
    for (std::size_t i = 0; i < 5; ++i) r.B[i] = PolyZ::parse(coeffs[i].get<std::string>());
    r.min_degree = j.at("min_degree").get<std::int64_t>();
    r.kernel_dimension = j.at("kernel_dimension").get<std::size_t>();
    r.vanishing_order = j.at("vanishing_order").get<std::int64_t>();
    r.fresh_residual_zero = j.at("fresh_residual_zero").get<bool>();
    r.matches_closed_form = j.at("matches_closed_form").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("guess certificate: ") + e.what());
  }
}

void emit_certificate(const GuessResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << guess_to_json(r).dump(2) << '\n';
  if (!out) throw Error("write to " + path + " failed");
}

GuessResult load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return guess_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Certificate reverify(const GuessResult& r) {
  const GuessProblem& p = r.problem;
  return verify_relation_at_series("reverify[a=" + p.a.to_string() + ",b=" + p.b.to_string() + "]", p.a, p.b,
                                   std::vector<PolyZ>(r.B.begin(), r.B.end()), 2 * p.precision);
}

std::vector<std::pair<PolyZ, PolyZ>> parse_pairs_csv(std::string_view text) {
  std::vector<std::pair<PolyZ, PolyZ>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t == "a,b") continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected \"a,b\"");
    }
    out.emplace_back(PolyZ::parse(trim(t.substr(0, comma))), PolyZ::parse(trim(t.substr(comma + 1))));
  }
  return out;
}

std::vector<std::pair<PolyZ, PolyZ>> default_batch_pairs() {
  const char* text =
      "z,z+1\n"
      "z+1,z\n"
      "z^2,z\n"
      "z,z^2+1\n"
      "z^2+z,z+1\n"
      "z^2,z^3+1\n"
      "z^3+z,z^2+z+1\n"
      "z^3,z^2+1\n"
      "z^4+z,z^3+1\n"
      "z^5+z^2+1,z^2\n"
      "z^6+z,z\n"
      "z^5,z^3+z+1\n"
      "z^4+z+1,z^5+z\n"
      "z^6+z^3+1,z^4+z\n";
  return parse_pairs_csv(text);
}

std::string batch_csv(const std::vector<GuessResult>& results) {
  std::ostringstream out;
  out << "a,b,d,degree_bound,precision,min_degree,kernel_dimension,vanishing_order,matches_closed_form\n";
  for (const GuessResult& r : results) {
    const GuessProblem& p = r.problem;
    out << p.a.to_string() << ',' << p.b.to_string() << ',' << p.a.degree() + p.b.degree() << ','
        << p.degree_bound << ',' << p.precision << ',' << r.min_degree << ',' << r.kernel_dimension << ','
        << r.vanishing_order << ',' << (r.matches_closed_form ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace tmcf

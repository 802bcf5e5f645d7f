#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "tmcf/analysis.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/guess.hpp"

using tmcf::PolyZ;

namespace {

PolyZ P(const char* s) { return PolyZ::parse(s); }

std::vector<PolyZ> closed_form(const PolyZ& a, const PolyZ& b) {
  const auto inst = tmcf::make_instance(a, b);
  return {inst.A.begin(), inst.A.end()};
}

}  // namespace

TEST_CASE("relation encoding round trip") {
  const std::vector<PolyZ> c = {P("z^3+1"), P("0"), P("z"), P("z^5+z^2"), P("1")};
  const auto v = tmcf::encode_relation(c, 4, 6);
  CHECK(v.size() == 35);
  CHECK(v.get(0));        // z^0 of B_0
  CHECK(v.get(1 * 5 + 2));  // z^1 of B_2
  CHECK(tmcf::decode_relation(v, 4, 6) == c);
  CHECK_THROWS_AS(tmcf::encode_relation(c, 4, 4), tmcf::InvalidArgument);
}

TEST_CASE("closed-form coefficients lie in the kernel") {
  for (auto [a, b] : tmcf::default_batch_pairs()) {
    const auto A = closed_form(a, b);
    std::int64_t D = 0;
    for (const auto& c : A) D = std::max(D, c.degree());
    const std::int64_t N = 5 * (D + 1) + 32;
    const auto sys = tmcf::relation_system(tmcf::xi_series(a, b, N), 4, D, N);
    const auto v = tmcf::encode_relation(A, 4, D);
    bool all_zero = true;
    for (std::size_t r = 0; r < sys.matrix.rows(); ++r) all_zero = all_zero && !sys.matrix.row(r).dot(v);
    INFO(a.to_string() << ", " << b.to_string());
    CHECK(all_zero);
  }
}

TEST_CASE("primitive part") {
  const std::vector<PolyZ> c = {P("z^2+z"), P("0"), P("z^3+z"), P("z")};
  const auto p = tmcf::primitive_part(c);
  CHECK(p == std::vector<PolyZ>{P("z+1"), P("0"), P("z^2+1"), P("1")});
  CHECK_THROWS_AS(tmcf::primitive_part({P("0"), P("0")}), tmcf::InvalidArgument);
}

TEST_CASE("guess recovers the quartic for (z, z+1) at D = 8") {
  const tmcf::GuessProblem p{P("z"), P("z+1"), 8, 5 * 9 + 40};
  const auto r = tmcf::guess_quartic(p);
  CHECK(r.matches_closed_form);
  CHECK(r.fresh_residual_zero);
  CHECK(r.B[1] == r.B[3]);
  CHECK(r.vanishing_order >= p.precision);
  CHECK(tmcf::primitive_part({r.B.begin(), r.B.end()}) == tmcf::primitive_part(closed_form(p.a, p.b)));
  CHECK(tmcf::guess_certificate(r).pass);
}

TEST_CASE("guess recovers the quartic for (z^2, z) at D = 12") {
  const tmcf::GuessProblem p{P("z^2"), P("z"), 12, 5 * 13 + 40};
  const auto r = tmcf::guess_quartic(p);
  CHECK(r.matches_closed_form);
  // The closed-form coefficients share a common factor here; the search
  // lands on the primitive quartic.
  std::int64_t primitive_degree = 0;
  for (const auto& c : tmcf::primitive_part(closed_form(p.a, p.b))) primitive_degree = std::max(primitive_degree, c.degree());
  CHECK(primitive_degree < 12);
  CHECK(r.min_degree == primitive_degree);
  CHECK(r.kernel_dimension == static_cast<std::size_t>(12 - primitive_degree + 1));
}

TEST_CASE("a generous degree bound still selects the least-degree relation") {
  const tmcf::GuessProblem p{P("z"), P("z+1"), 14, 5 * 15 + 40};
  const auto r = tmcf::guess_quartic(p);
  CHECK(r.matches_closed_form);
  CHECK(r.min_degree == 8);
  // Multiples of the quartic by every polynomial of degree <= 6.
  CHECK(r.kernel_dimension == 7);
}

TEST_CASE("guess rejects too few equations") {
  CHECK_THROWS_AS(tmcf::guess_quartic({P("z"), P("z+1"), 8, 50}), tmcf::InvalidArgument);
}

TEST_CASE("degree bound below the quartic gives an empty kernel") {
  CHECK_THROWS_AS(tmcf::guess_quartic({P("z"), P("z+1"), 5, 5 * 6 + 40}), tmcf::EmptyKernel);
}

TEST_CASE("mahler root has no small relation of degree <= 3") {
  const auto x = tmcf::reference_root(tmcf::ReferenceRoot::mahler, 512);
  for (int r = 1; r <= 3; ++r) {
    for (std::int64_t D : {1, 2, 4, 8}) {
      CHECK_THROWS_AS(tmcf::guess_relation(x, r, D, 5 * (D + 1) + 64), tmcf::EmptyKernel);
    }
  }
  // Control: degree 4 finds z X^4 + z X + 1.
  const auto g = tmcf::guess_relation(x, 4, 2, 5 * 3 + 64);
  CHECK(g.coeffs == std::vector<PolyZ>{P("1"), P("z"), P("0"), P("0"), P("z")});
}

TEST_CASE("ambiguous kernels are reported") {
  // x = 1/z: 1 + z x and x + z x^2 are independent relations of degree 1.
  const auto x = tmcf::LaurentZ::monomial(-1);
  CHECK_THROWS_AS(tmcf::guess_relation(x, 2, 2, 40), tmcf::AmbiguousKernel);
}

TEST_CASE("certificate file round trip") {
  const auto r = tmcf::guess_quartic(tmcf::default_problem(P("z^2"), P("z^3+1")));
  const auto path = (std::filesystem::temp_directory_path() / "tmcf_guess_roundtrip.json").string();
  tmcf::emit_certificate(r, path);
  const auto back = tmcf::load_certificate(path);
  std::remove(path.c_str());
  CHECK(back.B == r.B);
  CHECK(back.problem.degree_bound == r.problem.degree_bound);
  CHECK(back.matches_closed_form);
  CHECK(tmcf::reverify(back).pass);
  CHECK(tmcf::guess_to_json(r)["A3_equals_A1"] == true);
  CHECK_THROWS_AS(tmcf::load_certificate("/nonexistent/dir/x.json"), tmcf::Error);
}

TEST_CASE("pairs csv") {
  const auto pairs = tmcf::parse_pairs_csv("a,b\n# comment\n\n z^2 , z+1 \nz,z^3\n");
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].first == P("z^2"));
  CHECK(pairs[0].second == P("z+1"));
  CHECK_THROWS_AS(tmcf::parse_pairs_csv("z,z+1,z\n"), tmcf::ParseError);
  CHECK_THROWS_AS(tmcf::parse_pairs_csv("z\n"), tmcf::ParseError);
}

TEST_CASE("batch over the default pairs") {
  const auto pairs = tmcf::default_batch_pairs();
  std::size_t in_range = 0;
  std::size_t beyond = 0;
  std::vector<tmcf::GuessResult> results;
  for (auto [a, b] : pairs) {
    const auto r = tmcf::guess_quartic(tmcf::default_problem(a, b));
    INFO(a.to_string() << ", " << b.to_string());
    CHECK(r.matches_closed_form);
    CHECK(r.fresh_residual_zero);
    (a.degree() + b.degree() <= 7 ? in_range : beyond) += 1;
    results.push_back(r);
  }
  CHECK(in_range >= 10);
  CHECK(beyond >= 3);
  const std::string csv = tmcf::batch_csv(results);
  CHECK(csv.starts_with("a,b,d,"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(pairs.size() + 1));
}

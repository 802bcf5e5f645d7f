#include "tmcf/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tmcf/analysis.hpp"
#include "tmcf/contfrac.hpp"
#include "tmcf/errors.hpp"
#include "tmcf/guess.hpp"
#include "tmcf/identities.hpp"

namespace tmcf::cli {

namespace {

using nlohmann::json;

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json histogram_json(const Spectrum& s) {
  json h = json::object();
  for (const auto& [deg, count] : s.histogram) h[std::to_string(deg)] = count;
  return h;
}

// A certificate recording a failure that prevented the real check from running.
Certificate failed_certificate(const std::string& name, const std::string& what) {
  CertificateBuilder c(name);
  c.check("completed", false, what);
  return c.finish();
}

struct Outcome {
  json params = json::object();
  std::vector<Certificate> certificates;
  json data = json::object();
};

struct Options {
  std::string a;
  std::string b;
  std::int64_t prec = 0;
  int kmax = 3;
  std::vector<int> s_values;
  std::size_t n = 64;
  std::size_t apwenian = 4096;
  int lmax = 4;
  std::int64_t degbound = -1;
  std::string series = "tm";
  std::size_t count = 100;
  std::size_t depth = 13;
  std::string svg;
  std::string csv;
  std::string cert;
  std::string batch;
  std::string out;
  std::string report;
  bool json_stdout = false;
};

std::pair<PolyZ, PolyZ> pair_from(const Options& o) {
  if (o.a.empty() || o.b.empty()) throw InvalidArgument("--a and --b are required");
  return {PolyZ::parse(o.a), PolyZ::parse(o.b)};
}

std::int64_t precision_or_default(const Options& o) { return o.prec > 0 ? o.prec : default_precision(); }

Outcome cmd_expand(const Options& o) {
  Outcome r;
  const std::int64_t prec = precision_or_default(o);
  r.params = {{"series", o.series}, {"count", o.count}, {"precision", prec}};
  LaurentZ x;
  std::optional<PQStream> expected;
  if (o.series == "tm") {
    const auto [a, b] = pair_from(o);
    r.params["a"] = a.to_string();
    r.params["b"] = b.to_string();
    x = xi_series(a, b, prec);
    const TMWord w = tm_prefix(o.count, a, b);
    expected = w.to_stream();
  } else if (o.series == "mahler") {
    x = reference_root(ReferenceRoot::mahler, prec);
  } else if (o.series == "baumsweet") {
    x = reference_root(ReferenceRoot::baumsweet, prec);
  } else {
    throw InvalidArgument("--series must be one of tm, mahler, baumsweet");
  }
  const Expansion e = cf_expand(x, o.count);
  const std::size_t got = e.stream.size();
  CertificateBuilder c("expand[" + o.series + "]");
  c.param("precision", prec).param("requested", static_cast<std::int64_t>(o.count));
  c.param("extracted", static_cast<std::int64_t>(got));
  c.check("requested quotients extracted", e.status != ExpandStatus::horizon_exhausted,
          "horizon reached after " + std::to_string(got) + " quotients; raise --prec");
  if (expected) {
    bool same = e.stream.a0 == expected->a0;
    for (std::size_t i = 1; i <= got && same; ++i) same = e.stream[i] == (*expected)[i];
    c.check("quotients follow the Thue-Morse word", same);
  }
  r.certificates.push_back(c.finish());

  const char* status = e.status == ExpandStatus::complete ? "complete"
                       : e.status == ExpandStatus::finite ? "finite"
                                                          : "horizon_exhausted";
  r.data["status"] = status;
  r.data["quotients"] = json::parse(stream_to_json(e.stream));
  if (got > 0) {
    const Spectrum s = spectrum_window(e.stream, got);
    r.data["max_degree"] = s.max_degree;
    r.data["degree_histogram"] = histogram_json(s);
  }
  return r;
}

Outcome cmd_verify_identities(const Options& o) {
  if (o.kmax < 1 || o.kmax > 6) throw InvalidArgument("--kmax must lie in 1..6");
  Outcome r;
  r.params = {{"kmax", o.kmax}};
  r.certificates = verify_identities(o.kmax);
  return r;
}

Outcome cmd_verify_quartic(const Options& o) {
  Outcome r;
  if (!o.cert.empty()) {
    const GuessResult g = load_certificate(o.cert);
    r.params = {{"cert", o.cert}, {"a", g.problem.a.to_string()}, {"b", g.problem.b.to_string()}};
    r.certificates.push_back(reverify(g));
    return r;
  }
  const auto [a, b] = pair_from(o);
  const std::int64_t prec = precision_or_default(o);
  r.params = {{"a", a.to_string()}, {"b", b.to_string()}, {"precision", prec}};
  r.certificates.push_back(verify_quartic_at_series(a, b, prec));
  r.certificates.push_back(epsilon_bound_check(a, b, prec));
  return r;
}

Outcome cmd_riccati(const Options& o) {
  Outcome r;
  const auto [a, b] = pair_from(o);
  const std::int64_t prec = precision_or_default(o);
  r.params = {{"a", a.to_string()}, {"b", b.to_string()}, {"precision", prec}};
  r.certificates.push_back(riccati_check(a, b, prec));
  return r;
}

Outcome cmd_hyperquadratic(const Options& o) {
  Outcome r;
  const std::vector<int> s_values = o.s_values.empty() ? std::vector<int>{2, 3, 4} : o.s_values;
  r.params = {{"s", s_values}};
  for (const int s : s_values) r.certificates.push_back(hyperquadratic_toeplitz(s));
  return r;
}

Outcome cmd_hankel(const Options& o) {
  Outcome r;
  r.params = {{"n", o.n}, {"apwenian", o.apwenian}};
  const std::size_t coeffs = std::max(2 * o.apwenian + 2, 2 * o.n);
  const JacobiCF j = jacobi_coeffs(omega_sequence(coeffs / 2 + 3), coeffs);
  r.certificates.push_back(hankel_suite(j, o.n, o.apwenian));
  std::string head;
  for (std::size_t i = 0; i < 32; ++i) head += j.c.bit(i) ? '1' : '0';
  r.data["c_0_to_31"] = head;
  return r;
}

Outcome cmd_omega(const Options& o) {
  Outcome r;
  const std::int64_t prec = o.prec > 0 ? o.prec : 512;
  r.params = {{"precision", prec}};
  r.certificates.push_back(omega_quartic_check(prec));
  json g = json::array();
  for (const PolyZ& c : omega_coefficients()) g.push_back(c.to_string());
  r.data["g"] = g;
  return r;
}

Outcome cmd_approx(const Options& o) {
  Outcome r;
  const auto [a, b] = pair_from(o);
  r.params = {{"a", a.to_string()}, {"b", b.to_string()}, {"lmax", o.lmax}};
  ApproxExperiment ex = approx_experiment(a, b, o.lmax);
  json records = json::array();
  for (const ApproxRecord& rec : ex.records) {
    records.push_back({{"k", rec.k},
                       {"deg_q", rec.q.degree()},
                       {"log2_norm_q_xi", rec.norm_q_xi.log2},
                       {"log2_norm_q_xi2", rec.norm_q_xi2.log2},
                       {"product_check", rec.product_check},
                       {"previous_check", rec.previous_check}});
  }
  json searches = json::array();
  for (const VanishingSearch& v : ex.searches) {
    searches.push_back({{"D", v.degree_bound}, {"order", v.order}, {"excess_over_3D", v.excess_over_3d()}});
  }
  r.data["records"] = records;
  r.data["vanishing_search"] = searches;
  r.certificates.push_back(std::move(ex.certificate));
  return r;
}

Outcome cmd_guess(const Options& o) {
  Outcome r;
  if (!o.batch.empty()) {
    const auto pairs = o.batch == "default" ? default_batch_pairs() : parse_pairs_csv(read_file(o.batch));
    r.params = {{"batch", o.batch}, {"pairs", pairs.size()}};
    std::vector<GuessResult> results;
    for (const auto& [a, b] : pairs) {
      const std::string name = "guess[a=" + a.to_string() + ",b=" + b.to_string() + "]";
      try {
        GuessProblem p = default_problem(a, b);
        if (o.degbound >= 0) p.degree_bound = o.degbound;
        p.precision = o.prec > 0 ? o.prec : 5 * (p.degree_bound + 1) + 64;
        results.push_back(guess_quartic(p));
        r.certificates.push_back(guess_certificate(results.back()));
      } catch (const EmptyKernel& e) {
        r.certificates.push_back(failed_certificate(name, e.what()));
      } catch (const AmbiguousKernel& e) {
        r.certificates.push_back(failed_certificate(name, e.what()));
      }
    }
    const std::string csv = batch_csv(results);
    if (!o.out.empty()) write_file(o.out, csv);
    r.data["csv"] = csv;
    return r;
  }
  const auto [a, b] = pair_from(o);
  GuessProblem p = default_problem(a, b);
  if (o.degbound >= 0) p.degree_bound = o.degbound;
  p.precision = o.prec > 0 ? o.prec : 5 * (p.degree_bound + 1) + 64;
  r.params = {{"a", a.to_string()}, {"b", b.to_string()}, {"degbound", p.degree_bound}, {"precision", p.precision}};
  try {
    const GuessResult g = guess_quartic(p);
    if (!o.out.empty()) emit_certificate(g, o.out);
    r.certificates.push_back(guess_certificate(g));
    r.data["result"] = guess_to_json(g);
  } catch (const EmptyKernel& e) {
    r.certificates.push_back(failed_certificate("guess[a=" + a.to_string() + ",b=" + b.to_string() + "]", e.what()));
  } catch (const AmbiguousKernel& e) {
    r.certificates.push_back(failed_certificate("guess[a=" + a.to_string() + ",b=" + b.to_string() + "]", e.what()));
  }
  return r;
}

Outcome cmd_sections(const Options& o) {
  Outcome r;
  r.params = {{"depth", o.depth}};
  SectionsResult s = sections_support(o.depth);
  if (!o.svg.empty()) write_file(o.svg, sections_svg(s));
  if (!o.csv.empty()) write_file(o.csv, sections_csv(s));
  json dots = json::array();
  for (const Exponents& e : s.dots) dots.push_back(json::array({e.a, e.b}));
  r.data["trusted_degree"] = s.trusted_degree;
  r.data["dots"] = dots;
  r.data["parity"] = {{"even_even", s.even_even}, {"even_odd", s.even_odd}, {"odd_even", s.odd_even}, {"odd_odd", s.odd_odd}};
  r.certificates.push_back(std::move(s.certificate));
  return r;
}

Outcome cmd_refroots(const Options& o) {
  Outcome r;
  const std::int64_t prec = o.prec > 0 ? o.prec : 1024;
  r.params = {{"precision", prec}, {"count", o.count}};
  r.certificates.push_back(reference_root_check(ReferenceRoot::mahler, prec));
  r.certificates.push_back(reference_root_check(ReferenceRoot::baumsweet, prec));
  // Continued fraction spectra need more coefficients than the residual check.
  const std::int64_t cf_prec = std::max<std::int64_t>(prec, 8 * static_cast<std::int64_t>(o.count) + 64);
  for (const auto which : {ReferenceRoot::mahler, ReferenceRoot::baumsweet}) {
    const Expansion e = cf_expand(reference_root(which, cf_prec), o.count);
    const char* key = which == ReferenceRoot::mahler ? "mahler" : "baumsweet";
    const Spectrum sp = spectrum_window(e.stream, e.stream.size());
    r.data[key] = {{"quotients", e.stream.size()}, {"max_degree", sp.max_degree}, {"degree_histogram", histogram_json(sp)}};
  }
  return r;
}

void print_summary(const json& report, std::ostream& out) {
  for (const auto& c : report["certificates"]) {
    out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << '\n';
  }
  out << "overall: " << (report["overall_pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
}

}  // namespace

json make_report(const std::string& command, const json& params, std::vector<Certificate> certificates,
                 const json& data) {
  std::stable_sort(certificates.begin(), certificates.end(),
                   [](const Certificate& x, const Certificate& y) { return x.name < y.name; });
  json report;
  report["schema"] = kReportSchema;
  report["tool_version"] = kToolVersion;
  report["command"] = command;
  report["params"] = params;
  json certs = json::array();
  json times = json::object();
  for (const Certificate& c : certificates) {
    certs.push_back(to_json(c));
    times[c.name] = c.wall_time;
  }
  report["certificates"] = certs;
  report["overall_pass"] = all_pass(certificates);
  report["data"] = data;
  report["payload_digest"] = fnv_hex(report.dump());
  report["timing"] = {{"certificate_seconds", times}};
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thue-Morse continued fractions over GF(2): identity and series verification", "tmcf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto report_opts = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Write the JSON report to this file");
    sub->add_flag("--json", o.json_stdout, "Print the JSON report on stdout (default without --out)");
  };
  auto pair_opts = [&](CLI::App* sub) {
    sub->add_option("--a", o.a, "Polynomial a(z), e.g. z^2+1");
    sub->add_option("--b", o.b, "Polynomial b(z)");
  };
  const std::string prec_help = "Precision (negative exponents carried); default from TMCF_PRECISION";

  auto* expand = app.add_subcommand("expand", "Continued fraction expansion of a series");
  expand->add_option("--series", o.series, "tm, mahler or baumsweet")->check(CLI::IsMember({"tm", "mahler", "baumsweet"}));
  pair_opts(expand);
  expand->add_option("--count", o.count, "Number of partial quotients");
  expand->add_option("--prec", o.prec, prec_help);
  report_opts(expand);

  auto* ident = app.add_subcommand("verify-identities", "Symbolic identity suite over GF(2)[a,b]");
  ident->add_option("--kmax", o.kmax, "Largest level k");
  report_opts(ident);

  auto* quartic = app.add_subcommand("verify-quartic", "Quartic relation on the expanded series");
  pair_opts(quartic);
  quartic->add_option("--prec", o.prec, prec_help);
  quartic->add_option("--cert", o.cert, "Re-verify a certificate written by guess");
  report_opts(quartic);

  auto* riccati = app.add_subcommand("riccati", "Riccati equation and square criterion");
  pair_opts(riccati);
  riccati->add_option("--prec", o.prec, prec_help);
  report_opts(riccati);

  auto* hyper = app.add_subcommand("hyperquadratic", "Toeplitz determinants of the quartic coefficients");
  hyper->add_option("--s", o.s_values, "Values of s (default 2 3 4)")->check(CLI::Range(2, 4));
  report_opts(hyper);

  auto* hankel = app.add_subcommand("hankel", "Hankel determinants and apwenian recurrence for omega");
  hankel->add_option("--n", o.n, "Largest Hankel order");
  hankel->add_option("--apwenian", o.apwenian, "Largest index for c_n = c_{2n+1} + c_{2n+2}");
  report_opts(hankel);

  auto* omega = app.add_subcommand("omega", "Quartic satisfied by omega");
  omega->add_option("--prec", o.prec, "Precision (default 512)");
  report_opts(omega);

  auto* approx = app.add_subcommand("approx", "Approximation records and vanishing-order search");
  pair_opts(approx);
  approx->add_option("--lmax", o.lmax, "Levels l with k = 4^l")->check(CLI::Range(1, 6));
  report_opts(approx);

  auto* guess = app.add_subcommand("guess", "Recover the quartic by linear algebra");
  pair_opts(guess);
  guess->add_option("--degbound", o.degbound, "Coefficient degree bound D (default 4(deg a + deg b))");
  guess->add_option("--prec", o.prec, "Number of equations N (default 5(D+1) + 64)");
  guess->add_option("--out", o.out, "Certificate file (single pair) or CSV table (batch)");
  guess->add_option("--batch", o.batch, "CSV of pairs \"a,b\", or 'default' for the built-in list");
  guess->add_option("--report", o.report, "Write the JSON report to this file");
  guess->add_flag("--json", o.json_stdout, "Print the JSON report on stdout (default without --report)");

  auto* sections = app.add_subcommand("sections", "Support of the two-variable expansion");
  sections->add_option("--depth", o.depth, "Number of partial quotients of the convergent");
  sections->add_option("--svg", o.svg, "Write a scatter plot");
  sections->add_option("--csv", o.csv, "Write the dots as CSV");
  report_opts(sections);

  auto* refroots = app.add_subcommand("refroots", "Mahler and Baum-Sweet reference series");
  refroots->add_option("--prec", o.prec, "Precision for the residual checks (default 1024)");
  refroots->add_option("--count", o.count, "Partial quotients for the degree spectra");
  report_opts(refroots);

  std::ostringstream usage_out;
  std::ostringstream usage_err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, usage_out, usage_err);
    out << usage_out.str();
    err << usage_err.str();
    return code == 0 ? kPass : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Outcome outcome;
  try {
    if (command == "expand") {
      outcome = cmd_expand(o);
    } else if (command == "verify-identities") {
      outcome = cmd_verify_identities(o);
    } else if (command == "verify-quartic") {
      outcome = cmd_verify_quartic(o);
    } else if (command == "riccati") {
      outcome = cmd_riccati(o);
    } else if (command == "hyperquadratic") {
      outcome = cmd_hyperquadratic(o);
    } else if (command == "hankel") {
      outcome = cmd_hankel(o);
    } else if (command == "omega") {
      outcome = cmd_omega(o);
    } else if (command == "approx") {
      outcome = cmd_approx(o);
    } else if (command == "guess") {
      outcome = cmd_guess(o);
    } else if (command == "sections") {
      outcome = cmd_sections(o);
    } else {
      outcome = cmd_refroots(o);
    }
  } catch (const InvalidArgument& e) {
    err << "tmcf " << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "tmcf " << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const SizeLimit& e) {
    err << "tmcf " << command << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "tmcf " << command << ": internal error: " << e.what() << '\n';
    return kInternal;
  }

  const json report = make_report(command, outcome.params, std::move(outcome.certificates), outcome.data);
  const std::string report_path = command == "guess" ? o.report : o.out;
  try {
    if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "tmcf " << command << ": " << e.what() << '\n';
    return kInternal;
  }
  if (report_path.empty() || o.json_stdout) {
    out << report.dump(2) << '\n';
  } else {
    print_summary(report, out);
  }
  return report["overall_pass"].get<bool>() ? kPass : kFailed;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace tmcf::cli

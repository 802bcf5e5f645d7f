#include "tmcf/certificate.hpp"

#include <algorithm>
#include <sstream>

namespace tmcf {

namespace {

std::string hex_digest(std::uint64_t d) {
  std::ostringstream os;
  os << std::hex << d;
  return os.str();
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // FNV-1a over the eight bytes of v.
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string bipoly_summary(const BiPoly& p) {
  if (p.is_zero()) return "0";
  return std::to_string(p.term_count()) + " terms, deg_a " + std::to_string(p.deg_a()) + ", deg_b " +
         std::to_string(p.deg_b());
}

}  // namespace

CertificateBuilder::CertificateBuilder(std::string name) : start_(std::chrono::steady_clock::now()) {
  cert_.name = std::move(name);
}

CertificateBuilder& CertificateBuilder::param(const std::string& key, const std::string& value) {
  cert_.params[key] = value;
  return *this;
}

CertificateBuilder& CertificateBuilder::param(const std::string& key, std::int64_t value) {
  return param(key, std::to_string(value));
}

void CertificateBuilder::residual(std::string label, const BiPoly& forward, const BiPoly& permuted) {
  cert_.residuals.push_back(
      {std::move(label), forward.is_zero(), forward == permuted, forward.digest(), bipoly_summary(forward)});
}

void CertificateBuilder::residual(std::string label, const PolyZ& forward, const PolyZ& permuted) {
  cert_.residuals.push_back({std::move(label), forward.is_zero(), forward == permuted, forward.digest(),
                             forward.is_zero() ? "0" : "degree " + std::to_string(forward.degree())});
}

void CertificateBuilder::residual(std::string label, const LaurentZ& forward, const LaurentZ& permuted) {
  std::uint64_t d = mix(forward.body().digest(), static_cast<std::uint64_t>(forward.low()));
  d = mix(d, static_cast<std::uint64_t>(forward.horizon()));
  std::string summary = forward.is_zero() ? "0" : "leading exponent " + std::to_string(forward.top());
  if (!forward.is_exact()) summary += " (trusted down to z^" + std::to_string(forward.horizon()) + ")";
  cert_.residuals.push_back({std::move(label), forward.is_zero(), forward == permuted, d, std::move(summary)});
}

void CertificateBuilder::check(std::string label, bool ok, std::string detail) {
  cert_.residuals.push_back({std::move(label), ok, true, ok ? 0u : 1u, detail.empty() ? (ok ? "ok" : "failed") : detail});
}

Certificate CertificateBuilder::finish() {
  cert_.pass = std::all_of(cert_.residuals.begin(), cert_.residuals.end(),
                           [](const Residual& r) { return r.zero && r.orders_agree; });
  cert_.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return std::move(cert_);
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["params"] = c.params;
  j["pass"] = c.pass;
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : c.residuals) {
    rs.push_back({{"label", r.label},
                  {"zero", r.zero},
                  {"orders_agree", r.orders_agree},
                  {"digest", hex_digest(r.digest)},
                  {"summary", r.summary}});
  }
  j["residuals"] = std::move(rs);
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.name = j.at("name").get<std::string>();
  c.params = j.at("params").get<std::map<std::string, std::string>>();
  c.pass = j.at("pass").get<bool>();
  for (const auto& r : j.at("residuals")) {
    c.residuals.push_back({r.at("label").get<std::string>(), r.at("zero").get<bool>(),
                           r.at("orders_agree").get<bool>(),
                           std::stoull(r.at("digest").get<std::string>(), nullptr, 16),
                           r.at("summary").get<std::string>()});
  }
  return c;
}

bool all_pass(const std::vector<Certificate>& certs) {
  return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.pass; });
}

}  // namespace tmcf

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmcf/bipoly.hpp"
#include "tmcf/laurent.hpp"
#include "tmcf/poly.hpp"

namespace tmcf {

/// One checked quantity: zero when the identity holds. `orders_agree` records
/// whether the recomputation with permuted operand order gave the same value.
struct Residual {
  std::string label;
  bool zero = false;
  bool orders_agree = true;
  std::uint64_t digest = 0;
  std::string summary;
};

struct Certificate {
  std::string name;
  std::map<std::string, std::string> params;
  std::vector<Residual> residuals;
  bool pass = false;
  double wall_time = 0.0;
};

/// Deterministic part of the certificate (no timing).
nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

enum class Order { forward, permuted };

/// Sum of products. The permuted order reverses both the term list and the
/// factors inside every term.
template <class Ring>
Ring evaluate(const std::vector<std::vector<Ring>>& terms, Order order) {
  const bool fwd = order == Order::forward;
  const std::size_t n = terms.size();
  auto product = [&](const std::vector<Ring>& factors) {
    const std::size_t m = factors.size();
    Ring prod = factors[fwd ? 0 : m - 1];
    for (std::size_t f = 1; f < m; ++f) prod = prod * factors[fwd ? f : m - 1 - f];
    return prod;
  };
  // Accumulate from the first product rather than Ring{} so that truncated
  // types keep their own precision.
  if (n == 0) return Ring{};
  Ring sum = product(terms[fwd ? 0 : n - 1]);
  for (std::size_t t = 1; t < n; ++t) sum = sum + product(terms[fwd ? t : n - 1 - t]);
  return sum;
}

class CertificateBuilder {
 public:
  explicit CertificateBuilder(std::string name);

  CertificateBuilder& param(const std::string& key, const std::string& value);
  CertificateBuilder& param(const std::string& key, std::int64_t value);

  void residual(std::string label, const BiPoly& forward, const BiPoly& permuted);
  void residual(std::string label, const PolyZ& forward, const PolyZ& permuted);
  /// Series residual: zero means zero on the whole trusted range.
  void residual(std::string label, const LaurentZ& forward, const LaurentZ& permuted);
  /// Sum-of-products residual evaluated in both orders.
  template <class Ring>
  void residual_terms(std::string label, const std::vector<std::vector<Ring>>& terms) {
    residual(std::move(label), evaluate(terms, Order::forward), evaluate(terms, Order::permuted));
  }
  /// A finite statement that is not a residual (a degree bound, a support test).
  void check(std::string label, bool ok, std::string detail = {});

  Certificate finish();

 private:
  Certificate cert_;
  std::chrono::steady_clock::time_point start_;
};

/// Total pass over a list of certificates.
bool all_pass(const std::vector<Certificate>& certs);

}  // namespace tmcf

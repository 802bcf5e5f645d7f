#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmcf/certificate.hpp"

namespace tmcf::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "tmcf-report/1";

enum ExitCode : int { kPass = 0, kFailed = 1, kUsage = 2, kInternal = 3 };

/// Builds the report. Certificates are sorted by name; wall times go to a
/// separate "timing" object so that everything else is reproducible, and
/// "payload_digest" hashes that reproducible part.
nlohmann::json make_report(const std::string& command, const nlohmann::json& params,
                           std::vector<Certificate> certificates, const nlohmann::json& data);

/// Entry point of the tmcf tool. Normal output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace tmcf::cli

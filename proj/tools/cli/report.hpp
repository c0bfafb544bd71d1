#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace hamp::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "hamp";
inline constexpr const char* kToolVersion = "1.0.0";

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// One machine-readable run: the effective configuration, command-specific
/// results and a verdict per check.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Json& config() { return config_; }
  Json& results() { return results_; }
  const Json& config() const { return config_; }
  const Json& results() const { return results_; }

  void check(std::string name, bool pass, std::string detail = {});
  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool allPass() const;
  std::optional<Check> firstFailure() const;

  Json toJson() const;
  /// Two-space indented text ending in a newline.
  std::string dump() const;

 private:
  std::string command_;
  Json config_ = Json::object();
  Json results_ = Json::object();
  std::vector<Check> checks_;
};

/// q rounded half away from zero to `digits` places, e.g. "0.498750".
std::string decimal(const mpq_class& q, int digits = 12);
/// Scientific notation with a fixed number of significant digits.
std::string decimal(double x, int significant = 10);
/// "n/d" in lowest terms (just "n" for integers).
std::string exact(const mpq_class& q);

/// Writes to a sibling temporary and renames it over `path`.
void writeAtomically(const std::filesystem::path& path, const std::string& text);

}  // namespace hamp::cli

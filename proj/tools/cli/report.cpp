#include "cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hamp::cli {

void Report::check(std::string name, bool pass, std::string detail) {
  checks_.push_back({std::move(name), pass, std::move(detail)});
}

bool Report::allPass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

std::optional<Check> Report::firstFailure() const {
  auto it = std::find_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; });
  if (it == checks_.end()) return std::nullopt;
  return *it;
}

Json Report::toJson() const {
  Json verdicts = Json::array();
  for (const auto& c : checks_) {
    verdicts.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return Json{{"tool", kToolName},      {"version", kToolVersion}, {"command", command_}, {"config", config_},
              {"results", results_},    {"verdicts", verdicts},    {"allPass", allPass()}};
}

std::string Report::dump() const { return toJson().dump(2) + "\n"; }

std::string decimal(const mpq_class& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const mpq_class scaled = abs(q) * scale;
  mpz_class rounded = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  std::string body = rounded.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return (q < 0 && rounded != 0 ? "-" : "") + body;
}

std::string decimal(double x, int significant) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*e", std::max(significant - 1, 0), x);
  return buffer;
}

std::string exact(const mpq_class& q) { return q.get_str(); }

void writeAtomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

}  // namespace hamp::cli

#include "gkz/report.hpp"

#include <sstream>

#include "gkz/errors.hpp"

namespace gkz {

bool Report::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + name + "'");
}

namespace {

void text_lines(std::ostringstream& os, const nlohmann::ordered_json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) text_lines(os, v, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i)
      text_lines(os, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string emit_report(const Report& report, Format format) {
  if (format == Format::Csv) return growth_csv(report.growth.value_or(std::vector<GrowthRow>{}));
  if (format == Format::Text) {
    if (report.empty()) return "no results\n";
    std::ostringstream os;
    if (!report.command.empty()) os << "command: " << report.command << "\n";
    if (!report.body.is_null()) text_lines(os, report.body, "");
    for (const auto& c : report.checks)
      os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
         << "\n";
    return os.str();
  }
  if (report.empty()) return "{}\n";
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["result"] = report.body;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = report.all_passed();
  return j.dump(2) + "\n";
}

}  // namespace gkz

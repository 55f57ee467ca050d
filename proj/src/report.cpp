#include "pfarc/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pfarc {

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("PFARC_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      // not a number: fall back to the flag
    }
  }
  return std::max(flag_value, 1);
}

nlohmann::json make_report(const std::string& command, const std::string& check, nlohmann::json config,
                           nlohmann::json cells, double wall_clock_seconds, nlohmann::json notes) {
  std::size_t passed = 0;
  for (const auto& c : cells) {
    if (c.value("verdict", "") == "pass") ++passed;
  }
  nlohmann::json r;
  r["schema"] = kReportSchema;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["check"] = check;
  r["config"] = std::move(config);
  r["summary"] = {{"cells", cells.size()}, {"passed", passed}, {"failed", cells.size() - passed}};
  r["verdict"] = passed == cells.size() ? "pass" : "fail";
  r["cells"] = std::move(cells);
  if (!notes.is_null()) r["notes"] = std::move(notes);
  r["timing"] = {{"wall_clock_seconds", wall_clock_seconds}};
  return r;
}

bool report_passed(const nlohmann::json& report) { return report.value("verdict", "") == "pass"; }

std::string serialize(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace pfarc

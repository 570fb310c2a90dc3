#include "gwcone/report.hpp"

#include <cstdio>
#include <sstream>

namespace gwcone {

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

nlohmann::json key_to_json(const SeriesKey& k) {
  return {{"z_exp", k.z}, {"basis", k.basis}, {"novikov", k.beta.degrees}, {"eps", k.eps}};
}

nlohmann::json grade_to_json(const Grade& g) { return {{"novikov", g.beta.degrees}, {"eps", g.eps}}; }

nlohmann::json to_json(const CheckResult& c) {
  return {{"suite", c.suite},     {"name", c.name},           {"passed", c.passed},
          {"details", c.details}, {"offending", c.offending}, {"seconds", c.seconds}};
}

nlohmann::json to_json(const Report& r, bool include_timing) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    auto j = to_json(c);
    if (!include_timing) j.erase("seconds");
    checks.push_back(std::move(j));
  }
  nlohmann::json out = {{"target", r.target},
                        {"truncation",
                         {{"D", r.trunc.novikov_order},
                          {"E", r.trunc.epsilon_order},
                          {"z_min", r.trunc.z_min},
                          {"z_max", r.trunc.z_max}}},
                        {"seed", nullptr},
                        {"t", r.t},
                        {"checks", checks},
                        {"passed", r.passed()}};
  if (r.seed) out["seed"] = *r.seed;
  return out;
}

std::string to_human(const Report& r) {
  std::ostringstream out;
  out << "target " << r.target << "  D=" << r.trunc.novikov_order << " E=" << r.trunc.epsilon_order << " z in ["
      << r.trunc.z_min << ", " << r.trunc.z_max << "]";
  if (r.seed) out << "  seed=" << *r.seed;
  out << "\n";
  for (const auto& c : r.checks) {
    char time[32];
    std::snprintf(time, sizeof time, "%.3fs", c.seconds);
    out << (c.passed ? "PASS " : "FAIL ") << c.suite << "/" << c.name << "  (" << time << ")";
    if (!c.details.empty()) out << "  " << c.details;
    out << "\n";
    if (!c.passed && !c.offending.empty()) {
      const std::size_t shown = std::min<std::size_t>(c.offending.size(), 10);
      for (std::size_t i = 0; i < shown; ++i) out << "    " << c.offending[i].dump() << "\n";
      if (shown < c.offending.size()) out << "    ... " << c.offending.size() - shown << " more\n";
    }
  }
  out << (r.passed() ? "ALL PASSED" : "FAILURES") << "\n";
  return out.str();
}

}  // namespace gwcone

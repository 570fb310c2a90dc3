#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gwcone/series.hpp"

namespace gwcone {

/// Outcome of one exact check. `offending` lists every coefficient that broke the identity.
struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string suite_name, std::string check_name)
      : suite(std::move(suite_name)), name(std::move(check_name)) {}

  std::string suite;
  std::string name;
  bool passed = true;
  std::string details;
  nlohmann::json offending = nlohmann::json::array();
  double seconds = 0;
};

struct Report {
  std::string target;
  Truncation trunc;
  std::optional<std::uint64_t> seed;
  nlohmann::json t = nlohmann::json::array();
  std::vector<CheckResult> checks;

  bool passed() const;
};

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const Report& r, bool include_timing = true);
std::string to_human(const Report& r);

nlohmann::json key_to_json(const SeriesKey& k);
nlohmann::json grade_to_json(const Grade& g);

/// Runs `body` and stamps the elapsed wall-clock time on its result.
template <class F>
CheckResult timed(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r = body();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace gwcone

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwcone/givental.hpp"

namespace gwcone {

/// Everything a verification or dump run needs. Unset optionals mean "derive it".
struct RunConfig {
  std::string target = "P2";
  nlohmann::json custom_target;  ///< presentation object when the target is user-defined
  int D = 1;
  int E = 2;
  int T = 1;
  std::optional<int> z_min;
  std::optional<int> z_max;
  std::optional<std::uint64_t> seed;
  bool t_zero = false;
  std::optional<std::vector<Rational>> t_values;  ///< k-major coefficients
  std::vector<std::string> suites{"all"};
  std::string out;
  std::string format = "human";
};

/// Same keys as the command-line flags: target (name or presentation object), D, E, T, z_min,
/// z_max, seed, t ("zero", a list, or a comma-separated string), suites, out, format.
/// Keys absent from the file keep the values already in `base`.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// "zero" -> empty list with t_zero; otherwise comma/whitespace separated rationals.
std::vector<Rational> parse_rational_list(const std::string& text);

const std::vector<std::string>& suite_names();
/// Expands "all", rejects unknown names with ConfigError, keeps canonical order.
std::vector<std::string> expand_suites(const std::vector<std::string>& requested);

TargetPtr resolve_target(const RunConfig& c);
/// Uses the automatic window unless z_min / z_max are given; a given window narrower than the
/// automatic one is a ConfigError naming the required bounds.
Truncation resolve_truncation(const RunConfig& c, const TargetSpace& t);
/// Explicit values, zero, or random from the seed (seed 1 when unset).
TPolynomial resolve_t(const RunConfig& c, const TargetSpace& t);
std::uint64_t effective_seed(const RunConfig& c);

void validate(const RunConfig& c);

}  // namespace gwcone

#include "gwcone/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gwcone/errors.hpp"

namespace gwcone {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
  return out;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "target") {
        if (value.is_string()) {
          c.target = value.get<std::string>();
          c.custom_target = nullptr;
        } else if (value.is_object()) {
          c.custom_target = value;
          c.target = value.value("name", std::string("custom"));
        } else {
          throw ConfigError("target must be a name or a presentation object");
        }
      } else if (key == "D") {
        c.D = value.get<int>();
      } else if (key == "E") {
        c.E = value.get<int>();
      } else if (key == "T") {
        c.T = value.get<int>();
      } else if (key == "z_min") {
        c.z_min = value.get<int>();
      } else if (key == "z_max") {
        c.z_max = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "t") {
        c.t_zero = false;
        c.t_values.reset();
        if (value.is_string() && value.get<std::string>() == "zero") {
          c.t_zero = true;
        } else if (value.is_string()) {
          c.t_values = parse_rational_list(value.get<std::string>());
        } else if (value.is_array()) {
          std::vector<Rational> vals;
          for (const auto& v : value) vals.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>()));
          c.t_values = std::move(vals);
        } else {
          throw ConfigError("t must be \"zero\", a list, or a string of rationals");
        }
      } else if (key == "suites") {
        c.suites = value.is_string() ? split_list(value.get<std::string>()) : value.get<std::vector<std::string>>();
      } else if (key == "out") {
        c.out = value.get<std::string>();
      } else if (key == "format") {
        c.format = value.get<std::string>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const ParseError& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"darboux",   "engine-oracles", "polynomiality", "inverse",
                                              "universal", "lagrangian",     "tangent",       "localisation"};
  return names;
}

std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
  std::vector<bool> chosen(suite_names().size(), false);
  for (const auto& r : requested) {
    if (r == "all") {
      std::fill(chosen.begin(), chosen.end(), true);
      continue;
    }
    auto it = std::find(suite_names().begin(), suite_names().end(), r);
    if (it == suite_names().end()) throw ConfigError("unknown suite '" + r + "'");
    chosen[static_cast<std::size_t>(it - suite_names().begin())] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) out.push_back(suite_names()[i]);
  }
  if (out.empty()) throw ConfigError("no suites selected");
  return out;
}

void validate(const RunConfig& c) {
  if (c.D < 0 || c.E < 0 || c.T < 0) throw ConfigError("D, E and T must be non-negative");
  if (c.format != "human" && c.format != "json") throw ConfigError("format must be human or json");
  if (c.t_zero && c.t_values) throw ConfigError("t cannot be both zero and explicit");
  expand_suites(c.suites);
}

TargetPtr resolve_target(const RunConfig& c) {
  if (!c.custom_target.is_null()) return target_from_json(c.custom_target);
  return make_target(c.target);
}

Truncation resolve_truncation(const RunConfig& c, const TargetSpace& t) {
  Truncation need = auto_truncation(t, c.D, c.E, c.T);
  Truncation use = need;
  if (c.z_min) use.z_min = *c.z_min;
  if (c.z_max) use.z_max = *c.z_max;
  if (use.z_min > need.z_min || use.z_max < need.z_max) {
    throw ConfigError("z-window [" + std::to_string(use.z_min) + ", " + std::to_string(use.z_max) +
                      "] is too narrow for target " + t.name() + " at D=" + std::to_string(c.D) + " E=" +
                      std::to_string(c.E) + " T=" + std::to_string(c.T) + ": need z_min <= " +
                      std::to_string(need.z_min) + " and z_max >= " + std::to_string(need.z_max));
  }
  use.validate();
  return use;
}

std::uint64_t effective_seed(const RunConfig& c) { return c.seed.value_or(1); }

TPolynomial resolve_t(const RunConfig& c, const TargetSpace& t) {
  if (c.t_zero) return TPolynomial::zero(t, c.T);
  if (c.t_values) return TPolynomial::from_values(t, c.T, *c.t_values);
  return TPolynomial::random(t, c.T, effective_seed(c));
}

}  // namespace gwcone

// gwcone: verification suites, series dumps and correlator queries.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage error,
// 3 configuration or z-window error, 4 any other failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "gwcone/config.hpp"
#include "gwcone/errors.hpp"
#include "gwcone/localisation.hpp"
#include "gwcone/query.hpp"
#include "gwcone/suites.hpp"

using namespace gwcone;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, config_error = 3, other = 4 };

struct Flags {
  std::string config_file;
  std::string target;
  std::optional<int> D, E, T, z_min, z_max;
  std::optional<std::uint64_t> seed;
  std::string t;
  std::vector<std::string> suites;
  std::string out;
  std::string format;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its keys");
  cmd->add_option("--target", f.target, "point, P1 or P2");
  cmd->add_option("--D", f.D, "Novikov degree bound");
  cmd->add_option("--E", f.E, "eps (t-insertion) order bound");
  cmd->add_option("--T", f.T, "degree of t(z)");
  cmd->add_option("--z-min", f.z_min, "most negative retained z exponent (default: automatic)");
  cmd->add_option("--z-max", f.z_max, "largest retained z exponent (default: automatic)");
  cmd->add_option("--seed", f.seed, "seed for random t");
  cmd->add_option("--t", f.t, "'zero' or k-major rationals t_0^0,t_0^1,...,t_T^N");
  cmd->add_option("--out", f.out, "write the report or dump to this file");
  cmd->add_option("--format", f.format, "human or json")->check(CLI::IsMember({"human", "json"}));
}

RunConfig build_config(const Flags& f) {
  RunConfig c;
  if (!f.config_file.empty()) c = load_config_file(f.config_file, c);
  if (!f.target.empty()) {
    c.target = f.target;
    c.custom_target = nullptr;
  }
  if (f.D) c.D = *f.D;
  if (f.E) c.E = *f.E;
  if (f.T) c.T = *f.T;
  if (f.z_min) c.z_min = f.z_min;
  if (f.z_max) c.z_max = f.z_max;
  if (f.seed) c.seed = f.seed;
  if (!f.t.empty()) {
    c.t_zero = f.t == "zero";
    c.t_values.reset();
    if (!c.t_zero) {
      try {
        c.t_values = parse_rational_list(f.t);
      } catch (const ParseError& e) {
        throw ConfigError(std::string("--t: ") + e.what());
      }
    }
  }
  if (!f.suites.empty()) c.suites = f.suites;
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = f.format;
  validate(c);
  return c;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

int cmd_verify(const Flags& f) {
  const RunConfig c = build_config(f);
  const Report report = run_verification(c);
  emit(c.format == "json" ? to_json(report).dump(2) + "\n" : to_human(report), c.out);
  if (!c.out.empty()) std::cout << (report.passed() ? "passed" : "FAILED") << " (report in " << c.out << ")\n";
  return report.passed() ? ok : check_failed;
}

int cmd_series(const Flags& f, const std::string& which, const std::vector<int>& tangent) {
  const RunConfig c = build_config(f);
  TargetPtr target = resolve_target(c);
  const Truncation trunc = resolve_truncation(c, *target);
  Givental g(std::make_shared<Engine>(target), resolve_t(c, *target), trunc);
  std::optional<GiventalSeries> s;
  if (which == "cone") {
    s = g.cone_point();
  } else if (which == "SL") {
    s = g.s_apply(g.cone_point());
  } else if (which == "locsum") {
    s = localisation_sum(g);
  } else {
    if (tangent.size() != 2 || tangent[0] < 0) {
      std::cerr << "usage: series tangent ALPHA K\n";
      return usage;
    }
    s = g.tangent_vector(static_cast<std::size_t>(tangent[0]), tangent[1]);
  }
  emit(series_to_json(*s).dump(c.format == "json" ? 2 : -1) + "\n", c.out);
  return ok;
}

int cmd_splittings(const Flags& f, int n) {
  const RunConfig c = build_config(f);
  TargetPtr target = resolve_target(c);
  const Truncation trunc = resolve_truncation(c, *target);
  Givental g(std::make_shared<Engine>(target), resolve_t(c, *target), trunc);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& beta : target->effective_classes(c.D)) {
    for (int m = 0; m <= (n >= 0 ? n : c.E); ++m) {
      if (n >= 0 && m != n) continue;
      for (const auto& rec : enumerate_splittings(*target, beta, m)) {
        auto j = to_json(rec);
        j["contribution"] = series_to_json(contribution(rec, g));
        out.push_back(std::move(j));
      }
    }
  }
  emit(out.dump(2) + "\n", c.out);
  return ok;
}

int cmd_correlator(const std::string& target_name, const std::string& query) {
  TargetPtr target = make_target(target_name);
  Engine engine(target);
  CorrelatorKey key;
  try {
    key = parse_correlator_query(query, *target);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return usage;
  }
  const Rational v = engine.correlator(key);
  std::cout << to_string(key) << " = " << to_string(v) << "\n"
            << "num " << numerator_string(v) << "\nden " << denominator_string(v) << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact genus-zero Gromov-Witten and Lagrangian cone verification"};
  app.require_subcommand(1);

  Flags verify_flags, series_flags, split_flags;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  add_run_flags(verify, verify_flags);
  verify->add_option("--suites", verify_flags.suites,
                     "any of darboux engine-oracles polynomiality inverse universal lagrangian tangent "
                     "localisation, or all")
      ->delimiter(',');

  std::string which;
  std::vector<int> tangent;
  auto* series = app.add_subcommand("series", "dump a series: cone, SL, locsum or tangent ALPHA K");
  add_run_flags(series, series_flags);
  series->add_option("which", which)->required()->check(CLI::IsMember({"cone", "SL", "locsum", "tangent"}));
  series->add_option("alpha_k", tangent, "basis index and z power for tangent")->expected(0, 2);

  int split_n = -1;
  auto* splittings = app.add_subcommand("splittings", "list splitting records with their contributions");
  add_run_flags(splittings, split_flags);
  splittings->add_option("--n", split_n, "only this number of marked points");

  std::string corr_target = "P2", query;
  auto* correlator = app.add_subcommand("correlator", "evaluate one correlator, e.g. 'd=3; (2,0) x8'");
  correlator->add_option("--target", corr_target, "point, P1 or P2");
  correlator->add_option("query", query)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*verify) return cmd_verify(verify_flags);
    if (*series) return cmd_series(series_flags, which, tangent);
    if (*splittings) return cmd_splittings(split_flags, split_n);
    if (*correlator) return cmd_correlator(corr_target, query);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return config_error;
  } catch (const StabilityError& e) {
    std::cerr << "stability error: " << e.what() << "\n";
    return other;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return other;
  }
  return usage;
}

#include "doctest.h"

#include "gwcone/config.hpp"
#include "gwcone/errors.hpp"

using namespace gwcone;

TEST_CASE("config keys") {
  const auto c = config_from_json(nlohmann::json::parse(
      R"({"target": "P1", "D": 3, "E": 2, "T": 0, "seed": 42, "t": ["1/2", 3], "suites": "darboux,inverse",
          "format": "json", "out": "r.json", "z_min": -20})"));
  CHECK(c.target == "P1");
  CHECK(c.D == 3);
  CHECK(c.E == 2);
  CHECK(c.T == 0);
  CHECK(c.seed == 42u);
  REQUIRE(c.t_values);
  CHECK(*c.t_values == std::vector<Rational>{Rational(1, 2), Rational(3)});
  CHECK(c.suites == std::vector<std::string>{"darboux", "inverse"});
  CHECK(c.z_min == -20);
  CHECK_FALSE(c.z_max);
  CHECK(c.format == "json");

  // Keys not in the file keep the base values.
  RunConfig base;
  base.E = 4;
  const auto d = config_from_json(nlohmann::json::parse(R"({"t": "zero"})"), base);
  CHECK(d.E == 4);
  CHECK(d.t_zero);
  CHECK(d.target == "P2");
  CHECK(effective_seed(d) == 1u);

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"degree": 2})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"D": "two"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"t": "1/0"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse("[1, 2]")), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/gwcone.json"), ConfigError);
}

TEST_CASE("suite selection") {
  CHECK(expand_suites({"all"}).size() == 8);
  CHECK(expand_suites({"inverse", "darboux", "inverse"}) == std::vector<std::string>{"darboux", "inverse"});
  CHECK_THROWS_AS(expand_suites({"darbox"}), ConfigError);
  CHECK_THROWS_AS(expand_suites({}), ConfigError);
  RunConfig c;
  c.D = -1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.D = 1;
  c.suites = {"nope"};
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("z-window") {
  auto p1 = make_target("P1");
  RunConfig c;
  c.target = "P1";
  c.D = 2;
  c.E = 3;
  c.T = 1;
  // dim 1, c1 <= 4, E = 3: kernel depths 7 and 7, so z_min = min(-8, -9), z_max = T + 1.
  const Truncation auto_tr = resolve_truncation(c, *p1);
  CHECK(auto_tr == Truncation{2, 3, -9, 2});
  c.z_min = -30;
  c.z_max = 5;
  CHECK(resolve_truncation(c, *p1) == Truncation{2, 3, -30, 5});
  c.z_max = 1;
  try {
    resolve_truncation(c, *p1);
    FAIL("narrow window accepted");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("z_min <= -9") != std::string::npos);
    CHECK(msg.find("z_max >= 2") != std::string::npos);
  }
}

TEST_CASE("t resolution") {
  auto p2 = make_target("P2");
  RunConfig c;
  c.T = 1;
  c.t_values = parse_rational_list("1, -2/3 0 4,5,6");
  const auto t = resolve_t(c, *p2);
  CHECK(t.coeffs[0][1] == Rational(-2, 3));
  CHECK(t.coeffs[1][2] == 6);
  c.t_values = parse_rational_list("1,2");
  CHECK_THROWS_AS(resolve_t(c, *p2), ConfigError);
  c.t_values.reset();
  c.seed = 5;
  CHECK(resolve_t(c, *p2).coeffs == TPolynomial::random(*p2, 1, 5).coeffs);
  c.t_zero = true;
  CHECK(resolve_t(c, *p2).is_zero());
  CHECK_THROWS_AS(parse_rational_list("1,x"), ParseError);
  CHECK(parse_rational_list("").empty());
}

#include "doctest.h"

#include <random>

#include "gwcone/errors.hpp"
#include "gwcone/series.hpp"

using namespace gwcone;

namespace {

const Truncation kTrunc{2, 2, -6, 4};

GiventalSeries mono(const TargetPtr& t, int z, std::size_t basis, Rational c = 1, Truncation trunc = kTrunc) {
  GiventalSeries s(t, trunc);
  s.add_term(z, basis, t->zero_class(), 0, c);
  return s;
}

// Random even-cohomology series; `range` picks which z-exponents may appear.
GiventalSeries random_series(const TargetPtr& t, std::mt19937_64& rng, int z_lo, int z_hi) {
  GiventalSeries s(t, kTrunc);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), z(z_lo, z_hi), eps(0, 2), deg(0, 2);
  for (int i = 0; i < 12; ++i) {
    NovikovDegree beta = t->zero_class();
    if (beta.rank() > 0) beta.degrees[0] = deg(rng);
    Rational c(num(rng), den(rng));
    c.canonicalize();
    s.add_term(z(rng), rng() % t->size(), beta, eps(rng), c);
  }
  return s;
}

Rational scalar_value(const ScalarSeries& s, const Grade& g) { return s.coefficient(0, g); }

}  // namespace

TEST_CASE("truncation bounds") {
  CHECK_NOTHROW(kTrunc.validate());
  CHECK_THROWS_AS((Truncation{1, 1, 1, 2}.validate()), ConfigError);
  CHECK_THROWS_AS((Truncation{1, 1, -2, 0}.validate()), ConfigError);
  auto p1 = make_target("P1");
  GiventalSeries s(p1, kTrunc);
  s.add_term(0, 0, NovikovDegree{{3}}, 0, 5);  // Novikov degree beyond D is dropped
  s.add_term(0, 0, NovikovDegree{{0}}, 3, 5);  // eps beyond E is dropped
  CHECK(s.is_zero());
  CHECK_THROWS_AS(s.add_term(5, 0, NovikovDegree{{0}}, 0, 1), WindowOverflow);
}

TEST_CASE("add") {
  auto point = make_target("point");
  auto f = mono(point, 2, 0, Rational(3, 4));
  CHECK(add(f, GiventalSeries(point, kTrunc)) == f);
  CHECK(add(mono(point, 1, 0), mono(point, 1, 0, -1)).is_zero());
  CHECK(add(mono(point, 0, 0), mono(point, 0, 0)) == mono(point, 0, 0, 2));
  GiventalSeries other(point, Truncation{1, 2, -6, 4});
  CHECK_THROWS_AS(add(f, other), ContractError);
}

TEST_CASE("pair_extend") {
  auto point = make_target("point");
  auto r = pair_extend(mono(point, 2, 0, 3), mono(point, -1, 0, 5));
  CHECK(r.coefficient(1, Grade{{}, 0}) == 15);
  auto p2 = make_target("P2");
  CHECK(pair_extend(mono(p2, 0, 1), mono(p2, 0, 1)).coefficient(0, Grade{{{0}}, 0}) == 1);
  CHECK(pair_extend(mono(p2, 0, 1), GiventalSeries(p2, kTrunc)).is_zero());
  CHECK_THROWS_AS(pair_extend(mono(point, 3, 0), mono(point, 3, 0)), WindowOverflow);
}

TEST_CASE("omega") {
  auto point = make_target("point");
  // sum_{k+l=-1} (-1)^k a_k b_l
  GiventalSeries f(point, kTrunc), g(point, kTrunc);
  const Rational a[] = {2, -3, 5}, b[] = {7, 11, -13};  // f = sum a_k z^k, g = sum b_l z^{-1-l}
  for (int k = 0; k < 3; ++k) {
    f.add_term(k, 0, {}, 0, a[k]);
    g.add_term(-1 - k, 0, {}, 0, b[k]);
  }
  Rational expected = 0;
  for (int k = 0; k < 3; ++k) expected += (k % 2 == 0 ? 1 : -1) * a[k] * b[k];
  CHECK(scalar_value(omega(f, g), Grade{{}, 0}) == expected);

  auto p2 = make_target("P2");
  const Grade g0{{{0}}, 0};
  for (std::size_t al = 0; al < 3; ++al) {
    for (std::size_t ga = 0; ga < 3; ++ga) {
      for (int k = 0; k <= 4; ++k) {
        for (int l = 0; l <= 4; ++l) {
          GiventalSeries b(p2, kTrunc);
          b.add_vector(-1 - l, p2->dual_vector(ga), g0, l % 2 == 0 ? -1 : 1);
          CHECK(scalar_value(omega(mono(p2, k, al), b), g0) == (al == ga && k == l ? -1 : 0));
          CHECK(omega(mono(p2, k, al), mono(p2, l, ga)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("split_plus_minus and polynomiality verdicts") {
  auto p1 = make_target("P1");
  GiventalSeries f = mono(p1, 1, 0);
  GiventalSeries tail(p1, kTrunc);
  tail.add_vector(-1, p1->dual_vector(1), Grade{{{0}}, 0});
  auto [plus, minus] = split_plus_minus(f + tail);
  CHECK(plus == f);
  CHECK(minus == tail);
  auto [p0, m0] = split_plus_minus(GiventalSeries(p1, kTrunc));
  CHECK(p0.is_zero());
  CHECK(m0.is_zero());

  CHECK(is_z_polynomial(mono(p1, 1, 0, -1), PolynomialMode::z_h_plus).holds);
  auto v = is_z_polynomial(mono(p1, -1, 1), PolynomialMode::h_plus);
  CHECK_FALSE(v.holds);
  REQUIRE(v.offending.size() == 1);
  CHECK(v.offending[0] == SeriesKey{-1, 1, NovikovDegree{{0}}, 0});
  CHECK(is_z_polynomial(mono(p1, 0, 0), PolynomialMode::h_plus).holds);
  CHECK_FALSE(is_z_polynomial(mono(p1, 0, 0), PolynomialMode::z_h_plus).holds);
}

TEST_CASE("random-instance properties of Omega and the module structure") {
  std::mt19937_64 rng(2024);
  for (const char* name : {"point", "P1", "P2"}) {
    auto t = make_target(name);
    for (int trial = 0; trial < 25; ++trial) {
      // Exponents kept small enough that every pairing stays in the window.
      auto f = random_series(t, rng, -2, 1), g = random_series(t, rng, -2, 1), h = random_series(t, rng, -2, 1);
      ScalarSeries fg = omega(f, g), gf = omega(g, f);
      gf *= -1;
      CHECK(fg == gf);

      auto fp = random_series(t, rng, 0, 2), gp = random_series(t, rng, 0, 2);
      CHECK(omega(fp, gp).is_zero());
      auto fm = random_series(t, rng, -3, -1), gm = random_series(t, rng, -3, -1);
      CHECK(omega(fm, gm).is_zero());

      CHECK((f + g) + h == f + (g + h));
      CHECK(f + g == g + f);
      CHECK(Rational(2, 3) * (f + g) == Rational(2, 3) * f + Rational(2, 3) * g);
      CHECK((f - f).is_zero());
      ScalarSeries lin = omega(f + h, g), sum = omega(f, g);
      sum += omega(h, g);
      CHECK(lin == sum);
    }
  }
}

TEST_CASE("serialization round-trips exactly") {
  auto p2 = make_target("P2");
  GiventalSeries s(p2, kTrunc);
  Rational huge(Integer("123456789012345678901234567890123"), Integer("98765432109876543210987"));
  huge.canonicalize();
  s.add_term(-3, 2, NovikovDegree{{1}}, 2, huge);
  s.add_term(1, 0, NovikovDegree{{0}}, 0, -1);
  s.add_term(0, 1, NovikovDegree{{2}}, 1, Rational(-5, 7));
  const std::string text = serialize(s);
  auto back = series_from_json(nlohmann::json::parse(text), p2, kTrunc);
  CHECK(back == s);
  CHECK(serialize(back) == text);
  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(R"([{"z_exp":0}])"), p2, kTrunc), ParseError);
}

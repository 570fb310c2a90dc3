#include "doctest.h"

#include <set>

#include "gwcone/localisation.hpp"

using namespace gwcone;

namespace {

enum class Side { absent, single, stable, invalid };

Side zero_side(const NovikovDegree& b, int n) {
  if (b.is_zero() && n == 0) return Side::absent;
  if (b.is_zero() && n == 1) return Side::single;
  return (!b.is_zero() || n + 1 >= 3) ? Side::stable : Side::invalid;
}

Side infinity_side(const NovikovDegree& b, int n) {
  if (b.is_zero() && n == 0) return Side::absent;
  return (!b.is_zero() || n + 2 >= 3) ? Side::stable : Side::invalid;
}

SplittingKind expected_kind(Side s0, Side sinf) {
  if (sinf == Side::absent) return s0 == Side::absent ? SplittingKind::case1 : s0 == Side::single ? SplittingKind::case2 : SplittingKind::case5;
  return s0 == Side::absent ? SplittingKind::case3 : s0 == Side::single ? SplittingKind::case4 : SplittingKind::generic;
}

// Every (beta0, n0) with beta0 <= beta, n0 <= n whose two sides have a valid shape.
std::set<SplittingRecord> brute_force(const TargetSpace& t, const NovikovDegree& beta, int n) {
  std::set<SplittingRecord> out;
  for (const auto& b0 : t.effective_classes(beta.total())) {
    if (!b0.divides(beta)) continue;
    const NovikovDegree binf = beta - b0;
    for (int n0 = 0; n0 <= n; ++n0) {
      const Side s0 = zero_side(b0, n0), sinf = infinity_side(binf, n - n0);
      if (s0 == Side::invalid || sinf == Side::invalid) continue;
      out.insert({expected_kind(s0, sinf), b0, binf, n0, n - n0});
    }
  }
  return out;
}

Givental make(const std::string& name, int D, int E, int T, std::uint64_t seed) {
  auto target = make_target(name);
  TPolynomial t = seed == 0 ? TPolynomial::zero(*target, T) : TPolynomial::random(*target, T, seed);
  return Givental(std::make_shared<Engine>(target), t, auto_truncation(*target, D, E, T));
}

}  // namespace

TEST_CASE("degenerate enumerations") {
  auto p1 = make_target("P1");
  const auto zero = enumerate_splittings(*p1, NovikovDegree{{0}}, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].kind == SplittingKind::case1);
  // One marking: at X_0 alone (case2), or on a three-point constant piece at X_inf (case3).
  const auto one = enumerate_splittings(*p1, NovikovDegree{{0}}, 1);
  REQUIRE(one.size() == 2);
  std::set<SplittingKind> kinds;
  for (const auto& r : one) kinds.insert(r.kind);
  CHECK(kinds == std::set<SplittingKind>{SplittingKind::case2, SplittingKind::case3});

  auto point = make_target("point");
  for (int n = 0; n <= 2; ++n)
    for (const auto& r : enumerate_splittings(*point, NovikovDegree{}, n)) CHECK(r.kind != SplittingKind::generic);
  bool generic_seen = false;
  for (const auto& r : enumerate_splittings(*point, NovikovDegree{}, 4)) generic_seen |= r.kind == SplittingKind::generic;
  CHECK(generic_seen);
}

TEST_CASE("enumeration matches a brute-force shape search and has no repeats") {
  for (const char* name : {"point", "P1", "P2"}) {
    auto t = make_target(name);
    for (const auto& beta : t->effective_classes(name == std::string("point") ? 0 : 3)) {
      for (int n = 0; n <= 6; ++n) {
        const auto records = enumerate_splittings(*t, beta, n);
        const std::set<SplittingRecord> unique(records.begin(), records.end());
        CHECK(unique.size() == records.size());
        CHECK(unique == brute_force(*t, beta, n));
        // Every side shape is admissible, so each (beta0 <= beta, n0 <= n) gives one record.
        CHECK(records.size() == static_cast<std::size_t>((beta.total() + 1) * (n + 1)));
        for (const auto& r : records) {
          CHECK(r.beta() == beta);
          CHECK(r.n() == n);
          SplittingKind k;
          REQUIRE(classify_splitting(r.beta0, r.n0, r.beta_inf, r.n_inf, &k));
          CHECK(k == r.kind);
        }
      }
    }
  }
  SplittingKind k;
  CHECK(classify_splitting(NovikovDegree{{0}}, 1, NovikovDegree{{0}}, 0, &k));
  CHECK(k == SplittingKind::case2);
  CHECK(classify_splitting(NovikovDegree{{1}}, 0, NovikovDegree{{0}}, 0, &k));
  CHECK(k == SplittingKind::case5);
  CHECK(classify_splitting(NovikovDegree{{0}}, 0, NovikovDegree{{1}}, 0, &k));
  CHECK(k == SplittingKind::case3);
  CHECK(classify_splitting(NovikovDegree{{0}}, 2, NovikovDegree{{0}}, 0, &k));
  CHECK(k == SplittingKind::case5);
  CHECK_FALSE(classify_splitting(NovikovDegree{{0}}, -1, NovikovDegree{{0}}, 0, &k));
}

TEST_CASE("case 1 and case 2 contributions") {
  auto g = make("P1", 1, 2, 1, 4);
  const auto c1 = contribution({SplittingKind::case1, NovikovDegree{{0}}, NovikovDegree{{0}}, 0, 0}, g);
  GiventalSeries minus_z(g.target_ptr(), g.trunc());
  minus_z.add_term(1, 0, NovikovDegree{{0}}, 0, -1);
  CHECK(c1 == minus_z);
  const auto c2 = contribution({SplittingKind::case2, NovikovDegree{{0}}, NovikovDegree{{0}}, 1, 0}, g);
  CHECK(c2 == g.dilaton_shift() - minus_z);
}

TEST_CASE("localisation sum equals S applied to the cone point") {
  struct Config {
    const char* name;
    int D, E, T;
  };
  for (const auto& c : {Config{"point", 0, 5, 2}, Config{"P1", 2, 3, 1}, Config{"P2", 2, 2, 1}}) {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      auto g = make(c.name, c.D, c.E, c.T, seed);
      std::vector<SplittingRecord> used;
      const auto r = check_main_identity(g, &used);
      CHECK_MESSAGE(r.passed, c.name << " seed " << seed << ": " << r.details);
      CHECK(localisation_sum(g) == g.s_apply(g.cone_point()));
      CHECK_FALSE(used.empty());
      CHECK(check_weight_bookkeeping(used).passed);
    }
  }
}

TEST_CASE("weight bookkeeping rejects an inconsistent record") {
  std::vector<SplittingRecord> bad{{SplittingKind::case1, NovikovDegree{{0}}, NovikovDegree{{1}}, 0, 2}};
  CHECK_FALSE(check_weight_bookkeeping(bad).passed);
}

TEST_CASE("negative control: the sum for one t differs from S(L) for another") {
  auto a = make("P1", 2, 2, 1, 1), b = make("P1", 2, 2, 1, 2);
  CHECK_FALSE(localisation_sum(a) == b.s_apply(b.cone_point()));
}

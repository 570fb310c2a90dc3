#include "doctest.h"

#include "gwcone/errors.hpp"
#include "gwcone/target.hpp"

using namespace gwcone;

namespace {

nlohmann::json p1_presentation() {
  return nlohmann::json::parse(R"({
    "name": "myP1", "dim": 1, "basis_degrees": [0, 1],
    "pairing": [[0, 1], [1, 0]],
    "cup": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    "class_rank": 1, "c1_pairing": [2], "divisor_pairing": {"1": [1]}
  })");
}

}  // namespace

TEST_CASE("built-in presentations") {
  auto point = make_target("point");
  CHECK(point->dim() == 0);
  CHECK(point->size() == 1);
  CHECK(point->pairing() == RationalMatrix{{1}});
  CHECK(point->class_rank() == 0);

  auto p2 = make_target("P2");
  CHECK(p2->pairing() == RationalMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(p2->c1_pairing(NovikovDegree{{2}}) == 6);
  CHECK(p2->divisor_pairing(1, NovikovDegree{{3}}) == 3);

  auto p1 = make_target("P1");
  CHECK(p1->c1_pairing(NovikovDegree{{1}}) == 2);
  CHECK(p1->c1_pairing(NovikovDegree{{3}}) == 6);

  CHECK_THROWS_AS(make_target("P3"), ConfigError);
}

TEST_CASE("cup products") {
  auto p2 = make_target("P2");
  CHECK(cup_product(*p2, p2->basis_vector(1), p2->basis_vector(1)) == p2->basis_vector(2));
  CHECK(cup_product(*p2, p2->basis_vector(1), p2->basis_vector(2)).is_zero());
  auto p1 = make_target("P1");
  CHECK(cup_product(*p1, p1->basis_vector(1), p1->basis_vector(1)).is_zero());
  for (const char* name : {"point", "P1", "P2"}) {
    auto t = make_target(name);
    CohVector v(t->size());
    for (std::size_t i = 0; i < t->size(); ++i) v[i] = Rational(static_cast<int>(i) * 3 - 2, 7);
    CHECK(cup_product(*t, t->unit(), v) == v);
    CHECK(cup_product(*t, v, t->unit()) == v);
  }
}

TEST_CASE("Poincare pairing") {
  auto p2 = make_target("P2");
  CHECK(poincare_pair(*p2, p2->basis_vector(1), p2->basis_vector(1)) == 1);
  auto point = make_target("point");
  CHECK(poincare_pair(*point, point->unit(), point->unit()) == 1);
  for (const char* name : {"point", "P1", "P2"}) {
    auto t = make_target(name);
    for (std::size_t a = 0; a < t->size(); ++a) {
      for (std::size_t b = 0; b < t->size(); ++b) {
        CHECK(poincare_pair(*t, t->basis_vector(a), t->dual_vector(b)) == (a == b ? 1 : 0));
      }
    }
  }
}

TEST_CASE("structural invariants of built-ins") {
  for (const char* name : {"point", "P1", "P2"}) {
    auto t = make_target(name);
    const std::size_t n = t->size();
    const auto& g = t->pairing();
    const auto& gi = t->inverse_pairing();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) s += g[i][k] * gi[k][j];
        CHECK(s == (i == j ? 1 : 0));
        CHECK(g[i][j] == g[j][i]);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const CohVector ab = cup_product(*t, t->basis_vector(a), t->basis_vector(b));
        for (std::size_t c = 0; c < n; ++c) {
          if (ab[c] != 0) CHECK(t->degree(c) == t->degree(a) + t->degree(b));
          const CohVector left = cup_product(*t, ab, t->basis_vector(c));
          const CohVector right = cup_product(*t, t->basis_vector(a), cup_product(*t, t->basis_vector(b), t->basis_vector(c)));
          CHECK(left == right);
        }
      }
    }
  }
}

TEST_CASE("Novikov degrees") {
  NovikovDegree a{{1, 2}}, b{{2, 0}};
  CHECK((a + b) == NovikovDegree{{3, 2}});
  CHECK((a + b - b) == a);
  CHECK_THROWS(b - a);
  CHECK(NovikovDegree::zero(2).is_zero());
  auto p2 = make_target("P2");
  CHECK(p2->effective_classes(3).size() == 4);
  CHECK(make_target("point")->effective_classes(5).size() == 1);
}

TEST_CASE("custom targets are validated") {
  auto t = target_from_json(p1_presentation());
  CHECK(t->name() == "myP1");
  CHECK_FALSE(t->builtin());
  CHECK(t->c1_pairing(NovikovDegree{{2}}) == 4);

  auto bad = p1_presentation();
  bad["pairing"] = {{0, 1}, {2, 0}};
  CHECK_THROWS_AS(target_from_json(bad), ConfigError);

  bad = p1_presentation();
  bad["cup"][1][1] = {1, 0};  // H.H = 1 breaks grading
  CHECK_THROWS_AS(target_from_json(bad), ConfigError);

  bad = p1_presentation();
  bad.erase("dim");
  CHECK_THROWS_AS(target_from_json(bad), ConfigError);
}

#include "doctest.h"

#include <algorithm>
#include <random>

#include "gwcone/correlator.hpp"
#include "gwcone/errors.hpp"
#include "gwcone/oracles.hpp"
#include "gwcone/query.hpp"

using namespace gwcone;

namespace {

std::vector<Insertion> repeat(Insertion i, int n) { return std::vector<Insertion>(static_cast<std::size_t>(n), i); }

std::vector<std::vector<int>> compositions(int total, int parts) {
  if (parts == 0) return total == 0 ? std::vector<std::vector<int>>{{}} : std::vector<std::vector<int>>{};
  std::vector<std::vector<int>> out;
  for (int first = 0; first <= total; ++first) {
    for (auto rest : compositions(total - first, parts - 1)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("virtual dimension and stability") {
  auto point = make_target("point"), p1 = make_target("P1"), p2 = make_target("P2");
  CHECK(vdim(*point, NovikovDegree{}, 3) == 0);
  CHECK(vdim(*p2, NovikovDegree{{1}}, 2) == 4);
  CHECK(vdim(*p1, NovikovDegree{{1}}, 0) == 0);
  CHECK_FALSE(is_stable(NovikovDegree{{0}}, 2));
  CHECK(is_stable(NovikovDegree{{1}}, 0));
  CHECK(is_stable(NovikovDegree{{0}}, 3));
}

TEST_CASE("reference values") {
  Engine point(make_target("point"));
  CHECK(point.correlator(NovikovDegree{}, repeat({0, 0}, 3)) == 1);
  CHECK(point.correlator(NovikovDegree{}, {{0, 2}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}) == 1);

  Engine p2(make_target("P2"));
  CHECK(p2.correlator(NovikovDegree{{1}}, {{1, 0}, {2, 0}, {2, 0}}) == 1);
  CHECK(p2.correlator(NovikovDegree{{2}}, repeat({2, 0}, 5)) == 1);
  CHECK(p2.correlator(NovikovDegree{{3}}, repeat({2, 0}, 8)) == 12);

  Engine p1(make_target("P1"));
  CHECK(p1.correlator(NovikovDegree{{1}}, {{1, 0}, {1, 0}}) == 1);
  // Dilaton with n = 0 and n = 1: <1 psi>_{0,1,1} = -2 <>, <1 psi, H>_{0,2,1} = -<H>.
  CHECK(p1.correlator(NovikovDegree{{1}}, {{0, 1}}) == -2);
  CHECK(p1.correlator(NovikovDegree{{1}}, {{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("point psi-integrals against the string-only oracle and the closed form") {
  Engine point(make_target("point"));
  CHECK(oracle::point_psi_integral({2, 0, 0, 0, 0}) == 1);
  CHECK(oracle::point_psi_integral({1, 1, 0, 0, 0}) == 2);
  for (int n = 3; n <= 8; ++n) {
    for (const auto& ks : compositions(n - 3, n)) {
      std::vector<Insertion> ins;
      Rational closed = factorial(n - 3);
      for (int k : ks) {
        ins.push_back({0, k});
        closed /= factorial(k);
      }
      const Rational v = point.correlator(NovikovDegree{}, ins);
      CHECK(v == closed);
      CHECK(v == oracle::point_psi_integral(ks));
    }
  }
  // Off the dimension constraint everything vanishes.
  CHECK(point.correlator(NovikovDegree{}, {{0, 1}, {0, 0}, {0, 0}}) == 0);
}

TEST_CASE("P2 primaries match the standalone Kontsevich recursion") {
  const auto n = oracle::kontsevich_numbers(5);
  CHECK(n[1] == 1);
  CHECK(n[2] == 1);
  CHECK(n[3] == 12);
  CHECK(n[4] == 620);
  CHECK(n[5] == 87304);
  Engine p2(make_target("P2"));
  for (int d = 1; d <= 4; ++d) {
    const CorrelatorKey key(NovikovDegree{{d}}, repeat({2, 0}, 3 * d - 1));
    CHECK(p2.correlator(key) == Rational(n[static_cast<std::size_t>(d)]));
    if (d >= 2) CHECK(p2.selected_rule(key) == Rule::primary);
  }
}

TEST_CASE("errors") {
  Engine p2(make_target("P2"));
  CHECK_THROWS_AS(p2.correlator(NovikovDegree{{0}}, {{0, 0}, {0, 0}}), StabilityError);
  CHECK_THROWS_AS(p2.correlator(NovikovDegree{{1}}, {}), ContractError);
  CHECK_THROWS_AS(p2.correlator(NovikovDegree{{1}}, {{7, 0}}), ContractError);
  CHECK_THROWS_AS(CorrelatorKey(NovikovDegree{{1}}, {{0, -1}}), ContractError);
  const CorrelatorKey key(NovikovDegree{{1}}, {{2, 0}, {2, 0}});
  CHECK_THROWS_AS(p2.evaluate_with(key, Rule::divisor_equation), ContractError);

  // A custom presentation evaluates beta = 0 classically but has no curve backend.
  auto custom = target_from_json(nlohmann::json::parse(R"({
    "name": "myP1", "dim": 1, "basis_degrees": [0, 1], "pairing": [[0, 1], [1, 0]],
    "cup": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "class_rank": 1, "c1_pairing": [2],
    "divisor_pairing": {"1": [1]}})"));
  Engine e(custom);
  CHECK(e.correlator(NovikovDegree{{0}}, {{0, 0}, {0, 0}, {1, 0}}) == 1);
  CHECK_THROWS_AS(e.correlator(NovikovDegree{{1}}, {{1, 0}, {1, 0}}), CapabilityError);
}

TEST_CASE("permutation symmetry") {
  Engine p2(make_target("P2"));
  std::vector<Insertion> ins{{2, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 1}};
  const Rational first = p2.correlator(NovikovDegree{{2}}, ins);
  std::sort(ins.begin(), ins.end());
  do {
    CHECK(p2.correlator(NovikovDegree{{2}}, ins) == first);
  } while (std::next_permutation(ins.begin(), ins.end()));
}

TEST_CASE("divisor-first and TRR-first agree") {
  std::mt19937_64 rng(99);
  int tested = 0, nonzero = 0;
  for (const char* name : {"P1", "P2"}) {
    Engine e(make_target(name));
    const auto& t = e.target();
    for (int trial = 0; trial < 400 && tested < 200; ++trial) {
      const int d = 1 + static_cast<int>(rng() % 3), n = 3 + static_cast<int>(rng() % 4);
      std::vector<Insertion> ins{{1, 0}};
      for (int i = 2; i < n; ++i) ins.push_back({rng() % t.size(), static_cast<int>(rng() % 3)});
      int used = 0;
      for (const auto& i : ins) used += t.degree(i.basis) + i.psi_power;
      const std::size_t c = rng() % t.size();
      const int k = vdim(t, NovikovDegree{{d}}, n) - used - t.degree(c);
      if (k < 1) continue;
      ins.push_back({c, k});
      const CorrelatorKey key(NovikovDegree{{d}}, ins);
      const Rational a = e.evaluate_with(key, Rule::divisor_equation), b = e.evaluate_with(key, Rule::topological_recursion);
      CHECK(a == b);
      ++tested;
      nonzero += a != 0;
    }
  }
  CHECK(tested >= 100);
  CHECK(nonzero >= 50);
}

TEST_CASE("TRR is independent of the companion pair") {
  Engine p2(make_target("P2"));
  const CorrelatorKey key(NovikovDegree{{2}}, {{2, 1}, {1, 0}, {2, 0}, {2, 0}, {2, 0}});
  const Rational v = p2.correlator(key);
  CHECK(v != 0);
  const auto& ins = key.insertions();
  std::size_t carrier = 0;
  while (ins[carrier].psi_power == 0) ++carrier;
  for (std::size_t a = 0; a < ins.size(); ++a) {
    for (std::size_t b = a + 1; b < ins.size(); ++b) {
      if (a == carrier || b == carrier) continue;
      CHECK(p2.topological_recursion(key, carrier, a, b) == v);
    }
  }
}

TEST_CASE("string and dilaton consistency, including one- and two-point keys") {
  for (const char* name : {"P1", "P2"}) {
    Engine e(make_target(name));
    const auto& t = e.target();
    for (int d = 1; d <= 2; ++d) {
      const NovikovDegree beta{{d}};
      for (std::size_t a = 0; a < t.size(); ++a) {
        for (std::size_t b = 0; b < t.size(); ++b) {
          for (int ka = 0; ka <= 5; ++ka) {
            std::vector<Insertion> base{{a, ka}};
            int budget = vdim(t, beta, 2) - t.degree(a) - ka - t.degree(b);
            if (budget >= 0) base.push_back({b, budget});
            const Rational v = e.correlator(beta, base);

            auto s = base;
            s.push_back({0, 0});
            Rational lowered = 0;
            for (std::size_t j = 0; j < base.size(); ++j) {
              if (base[j].psi_power == 0) continue;
              auto l = base;
              --l[j].psi_power;
              lowered += e.correlator(beta, l);
            }
            CHECK(e.correlator(beta, s) == lowered);

            auto dil = base;
            dil.push_back({0, 1});
            CHECK(e.correlator(beta, dil) == Rational(static_cast<int>(base.size()) - 2) * v);
          }
        }
      }
    }
  }
}

TEST_CASE("divisor equation with descendant corrections") {
  Engine p1(make_target("P1"));
  const NovikovDegree beta{{2}};
  // <H, 1 psi^2, H psi> in degree 2 = 2 <1 psi^2, H psi> + <H psi, H psi> + <1 psi^2, H^2 = 0>.
  const Rational lhs = p1.evaluate_with(CorrelatorKey(beta, {{1, 0}, {0, 2}, {1, 1}}), Rule::topological_recursion);
  const Rational rhs = 2 * p1.correlator(beta, {{0, 2}, {1, 1}}) + p1.correlator(beta, {{1, 1}, {1, 1}});
  CHECK(lhs != 0);
  CHECK(lhs == rhs);
}

TEST_CASE("kernel correlators") {
  Engine point(make_target("point"));
  auto m = point.kernel_correlator(NovikovDegree{}, {{0, 0}, {0, 0}}, point.target().unit(), -1);
  CHECK(m == std::map<int, Rational>{{-1, -1}});
  auto plus = point.kernel_correlator(NovikovDegree{}, {{0, 0}, {0, 0}}, point.target().unit(), 1);
  CHECK(plus == std::map<int, Rational>{{-1, 1}});

  Engine p2(make_target("P2"));
  const std::vector<Insertion> fixed{{2, 0}, {2, 0}};
  CohVector gamma(std::vector<Rational>{Rational(2), Rational(-1, 3), Rational(5)});
  auto a = p2.kernel_correlator(NovikovDegree{{1}}, fixed, gamma, 1);
  auto b = p2.kernel_correlator(NovikovDegree{{1}}, fixed, gamma, -1);
  CHECK(a.size() <= 3);
  CHECK_FALSE(a.empty());
  for (const auto& [z, v] : a) {
    const int l = -1 - z;
    CHECK(b.at(z) == ((l + 1) % 2 == 0 ? v : Rational(-v)));
  }
}

TEST_CASE("memoization is consistent across engines") {
  auto target = make_target("P2");
  Engine warm(target), cold(target);
  const CorrelatorKey key(NovikovDegree{{3}}, {{2, 3}, {2, 0}, {1, 1}, {2, 0}, {2, 0}});
  const Rational v = warm.correlator(key);
  CHECK(warm.cache_size() > 0);
  CHECK(warm.correlator(key) == v);
  CHECK(cold.correlator(key) == v);
}

TEST_CASE("correlator query grammar") {
  auto p2 = make_target("P2"), point = make_target("point");
  auto k = parse_correlator_query("d=3; (2,0) ×8", *p2);
  CHECK(k.beta() == NovikovDegree{{3}});
  CHECK(k.size() == 8);
  CHECK(parse_correlator_query("d=(1); (2,0) (2,0)", *p2) == CorrelatorKey(NovikovDegree{{1}}, {{2, 0}, {2, 0}}));
  CHECK(parse_correlator_query("d=();(0,0) (0,0)x2", *point).size() == 3);
  CHECK_THROWS_AS(parse_correlator_query("d=1; (2,0", *p2), ParseError);
  CHECK_THROWS_AS(parse_correlator_query("d=(1,1); (2,0)", *p2), ParseError);
  CHECK_THROWS_AS(parse_correlator_query("d=1; (5,0)", *p2), ParseError);
  CHECK_THROWS_AS(parse_correlator_query("e=1; (1,0)", *p2), ParseError);
}

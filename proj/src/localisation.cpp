#include "gwcone/localisation.hpp"

#include <set>

#include "gwcone/errors.hpp"

namespace gwcone {

namespace {

enum class Side { absent, single, stable, invalid };

Side zero_side(const NovikovDegree& beta, int n) {
  if (is_stable(beta, n + 1)) return Side::stable;
  if (beta.is_zero() && n == 0) return Side::absent;
  if (beta.is_zero() && n == 1) return Side::single;
  return Side::invalid;
}

Side infinity_side(const NovikovDegree& beta, int n) {
  if (is_stable(beta, n + 2)) return Side::stable;
  if (beta.is_zero() && n == 0) return Side::absent;
  return Side::invalid;
}

std::vector<NovikovDegree> parts_of(const NovikovDegree& beta) {
  std::vector<NovikovDegree> out{NovikovDegree::zero(beta.rank())};
  for (std::size_t i = 0; i < beta.rank(); ++i) {
    std::vector<NovikovDegree> next;
    for (const auto& b : out) {
      for (int v = 0; v <= beta.degrees[i]; ++v) {
        NovikovDegree c = b;
        c.degrees[i] = v;
        next.push_back(c);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::string to_string(SplittingKind kind) {
  switch (kind) {
    case SplittingKind::generic: return "generic";
    case SplittingKind::case1: return "case1";
    case SplittingKind::case2: return "case2";
    case SplittingKind::case3: return "case3";
    case SplittingKind::case4: return "case4";
    case SplittingKind::case5: return "case5";
  }
  return "?";
}

nlohmann::json to_json(const SplittingRecord& r) {
  return {{"kind", to_string(r.kind)},
          {"beta0", r.beta0.degrees},
          {"n0", r.n0},
          {"beta_inf", r.beta_inf.degrees},
          {"n_inf", r.n_inf}};
}

bool classify_splitting(const NovikovDegree& beta0, int n0, const NovikovDegree& beta_inf, int n_inf,
                        SplittingKind* kind) {
  const Side s0 = zero_side(beta0, n0), s_inf = infinity_side(beta_inf, n_inf);
  if (s0 == Side::invalid || s_inf == Side::invalid) return false;
  SplittingKind k;
  if (s_inf == Side::absent) {
    k = s0 == Side::absent ? SplittingKind::case1 : s0 == Side::single ? SplittingKind::case2 : SplittingKind::case5;
  } else {
    k = s0 == Side::absent ? SplittingKind::case3 : s0 == Side::single ? SplittingKind::case4 : SplittingKind::generic;
  }
  if (kind) *kind = k;
  return true;
}

std::vector<SplittingRecord> enumerate_splittings(const TargetSpace& t, const NovikovDegree& beta, int n) {
  if (beta.rank() != t.class_rank() || n < 0) throw ContractError("enumerate_splittings: bad (beta, n)");
  std::vector<SplittingRecord> out;
  for (const auto& b0 : parts_of(beta)) {
    for (int n0 = 0; n0 <= n; ++n0) {
      SplittingKind kind;
      if (classify_splitting(b0, n0, beta - b0, n - n0, &kind)) out.push_back({kind, b0, beta - b0, n0, n - n0});
    }
  }
  return out;
}

GiventalSeries contribution(const SplittingRecord& rec, Givental& g) {
  const auto& tgt = g.target();
  GiventalSeries out(g.target_ptr(), g.trunc());
  const Grade grade{rec.beta(), rec.n()};
  const NovikovDegree zero = tgt.zero_class();
  switch (rec.kind) {
    case SplittingKind::case1:
      // Everything collapses onto X_inf: -z 1.
      out.add_term(1, 0, zero, 0, -1);
      break;
    case SplittingKind::case2:
      // A single marking at the X_0 end: t(z).
      for (std::size_t k = 0; k < g.t().coeffs.size(); ++k) out.add_vector(static_cast<int>(k), g.t().coeffs[k], grade);
      break;
    case SplittingKind::case3:
      // <-z 1/(z - psi), t, ..., t, phi_g> phi^g.
      for (std::size_t gamma = 0; gamma < tgt.size(); ++gamma) {
        for (const auto& [z, v] : g.kernel_bracket(rec.beta_inf, rec.n_inf, {Insertion{gamma, 0}}, 0, 1)) {
          out.add_vector(z + 1, tgt.dual_vector(gamma), grade, -v);
        }
      }
      break;
    case SplittingKind::case4:
      // <t(z)/(z - psi), t, ..., t, phi_g> phi^g with the X_0 marking frozen at weight z.
      for (std::size_t gamma = 0; gamma < tgt.size(); ++gamma) {
        for (std::size_t k = 0; k < g.t().coeffs.size(); ++k) {
          for (std::size_t b = 0; b < tgt.size(); ++b) {
            const Rational& c = g.t().coeffs[k][b];
            if (c == 0) continue;
            for (const auto& [z, v] : g.kernel_bracket(rec.beta_inf, rec.n_inf, {Insertion{gamma, 0}}, b, 1)) {
              out.add_vector(z + static_cast<int>(k), tgt.dual_vector(gamma), grade, c * v);
            }
          }
        }
      }
      break;
    case SplittingKind::case5:
      // <t, ..., t, phi_g/(-z - psi)> phi^g.
      for (std::size_t gamma = 0; gamma < tgt.size(); ++gamma) {
        for (const auto& [z, v] : g.kernel_bracket(rec.beta0, rec.n0, {}, gamma, -1)) {
          out.add_vector(z, tgt.dual_vector(gamma), grade, v);
        }
      }
      break;
    case SplittingKind::generic: {
      // <t, ..., t, phi_a/(-z - psi_0)>_{beta0} <phi^a/(z - psi_inf), t, ..., t, phi_g>_{beta_inf} phi^g.
      const auto& g_inv = tgt.inverse_pairing();
      for (std::size_t a = 0; a < tgt.size(); ++a) {
        const auto left = g.kernel_bracket(rec.beta0, rec.n0, {}, a, -1);
        if (left.empty()) continue;
        for (std::size_t gamma = 0; gamma < tgt.size(); ++gamma) {
          std::map<int, Rational> right;
          for (std::size_t s = 0; s < tgt.size(); ++s) {
            if (g_inv[a][s] == 0) continue;
            for (const auto& [z, v] : g.kernel_bracket(rec.beta_inf, rec.n_inf, {Insertion{gamma, 0}}, s, 1)) {
              right[z] += g_inv[a][s] * v;
            }
          }
          for (const auto& [za, va] : left) {
            for (const auto& [zb, vb] : right) out.add_vector(za + zb, tgt.dual_vector(gamma), grade, va * vb);
          }
        }
      }
      break;
    }
  }
  return out;
}

GiventalSeries localisation_sum(Givental& g, std::vector<SplittingRecord>* used) {
  GiventalSeries out(g.target_ptr(), g.trunc());
  for (const auto& beta : g.target().effective_classes(g.trunc().novikov_order)) {
    for (int n = 0; n <= g.trunc().epsilon_order; ++n) {
      for (const auto& rec : enumerate_splittings(g.target(), beta, n)) {
        out += contribution(rec, g);
        if (used) used->push_back(rec);
      }
    }
  }
  return out;
}

CheckResult check_main_identity(Givental& g, std::vector<SplittingRecord>* used) {
  return timed([&] {
    CheckResult r("localisation", "localisation sum = S(f)");
    const GiventalSeries loc = localisation_sum(g, used);
    const GiventalSeries sl = g.s_apply(g.cone_point());
    std::set<SeriesKey> keys;
    for (const auto& [k, v] : loc.terms()) keys.insert(k);
    for (const auto& [k, v] : sl.terms()) keys.insert(k);
    for (const auto& k : keys) {
      const Rational a = loc.coefficient(k), b = sl.coefficient(k);
      if (a == b) continue;
      auto j = key_to_json(k);
      j["localisation"] = to_string(a);
      j["S_of_f"] = to_string(b);
      r.offending.push_back(std::move(j));
    }
    r.passed = r.offending.empty();
    r.details = std::to_string(loc.size()) + " terms compared";
    return r;
  });
}

CheckResult check_weight_bookkeeping(const std::vector<SplittingRecord>& records) {
  return timed([&] {
    CheckResult r("localisation", "splitting weights factor over the two sides");
    std::size_t generic = 0;
    for (const auto& rec : records) {
      const int n = rec.n();
      const Rational whole = Rational(binomial(n, rec.n_inf)) / Rational(factorial(n));
      const Rational sides = Rational(1) / (Rational(factorial(rec.n0)) * Rational(factorial(rec.n_inf)));
      const bool additive = rec.beta0 + rec.beta_inf == rec.beta() && rec.n0 + rec.n_inf == n;
      SplittingKind shape;
      const bool valid = classify_splitting(rec.beta0, rec.n0, rec.beta_inf, rec.n_inf, &shape) && shape == rec.kind;
      if (rec.kind == SplittingKind::generic) ++generic;
      if (whole != sides || !additive || !valid) {
        auto j = to_json(rec);
        j["binomial_over_factorial"] = to_string(whole);
        j["side_product"] = to_string(sides);
        j["shape_matches_kind"] = valid;
        r.offending.push_back(std::move(j));
      }
    }
    r.passed = r.offending.empty();
    r.details = std::to_string(records.size()) + " records (" + std::to_string(generic) + " generic)";
    return r;
  });
}

}  // namespace gwcone

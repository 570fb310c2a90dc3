#include "gwcone/givental.hpp"

#include <functional>
#include <set>
#include <random>

#include "gwcone/errors.hpp"
#include "gwcone/linear_algebra.hpp"

namespace gwcone {

namespace {

Grade grade_of(const NovikovDegree& beta, int eps) { return Grade{beta, eps}; }

nlohmann::json value_json(const Rational& v) { return {{"num", numerator_string(v)}, {"den", denominator_string(v)}}; }

nlohmann::json scalar_offending(const ScalarSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, v] : s.terms()) {
    auto j = grade_to_json(k.second);
    j["value"] = value_json(v);
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::json endo_key_json(const EndoKey& k) {
  return {{"z_exp", k.z}, {"row", k.row}, {"col", k.col}, {"novikov", k.beta.degrees}, {"eps", k.eps}};
}

}  // namespace

bool TPolynomial::is_zero() const {
  for (const auto& c : coeffs) {
    if (!c.is_zero()) return false;
  }
  return true;
}

TPolynomial TPolynomial::zero(const TargetSpace& t, int degree) {
  if (degree < 0) throw ConfigError("t(z) degree must be non-negative");
  return TPolynomial{std::vector<CohVector>(static_cast<std::size_t>(degree) + 1, CohVector(t.size()))};
}

TPolynomial TPolynomial::random(const TargetSpace& t, int degree, std::uint64_t seed) {
  TPolynomial out = zero(t, degree);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (auto& c : out.coeffs) {
    for (std::size_t a = 0; a < c.size(); ++a) {
      Rational v(num(rng), den(rng));
      v.canonicalize();
      c[a] = v;
    }
  }
  return out;
}

TPolynomial TPolynomial::from_values(const TargetSpace& t, int degree, const std::vector<Rational>& values) {
  TPolynomial out = zero(t, degree);
  if (values.size() != out.coeffs.size() * t.size()) {
    throw ConfigError("t needs " + std::to_string(out.coeffs.size() * t.size()) + " values (T+1 blocks of " +
                      std::to_string(t.size()) + "), got " + std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
    for (std::size_t a = 0; a < t.size(); ++a) out.coeffs[k][a] = values[k * t.size() + a];
  }
  return out;
}

nlohmann::json to_json(const TPolynomial& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : t.coeffs) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : c.coords()) row.push_back(to_string(v));
    out.push_back(std::move(row));
  }
  return out;
}

Truncation auto_truncation(const TargetSpace& target, int D, int E, int T) {
  if (D < 0 || E < 0 || T < 0) throw ConfigError("D, E and T must be non-negative");
  int c1 = 0;
  for (const auto& beta : target.effective_classes(D)) c1 = std::max(c1, target.c1_pairing(beta));
  const int single = std::max(0, target.dim() - 1 + c1 + E);
  const int paired = std::max(0, 2 * target.dim() - 2 + c1 + E);
  Truncation t{D, E, std::min(-(1 + single), -(2 + paired)), T + 1};
  return t;
}

GiventalSeries dilaton_shift(const TPolynomial& t, TargetPtr target, const Truncation& trunc) {
  GiventalSeries q(target, trunc);
  const NovikovDegree zero = target->zero_class();
  q.add_term(1, 0, zero, 0, -1);
  for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
    q.add_vector(static_cast<int>(k), t.coeffs[k], grade_of(zero, 1));
  }
  return q;
}

TPolynomial dilaton_unshift(const GiventalSeries& q) {
  const auto& target = *q.target();
  int degree = 0;
  for (const auto& [k, v] : q.terms()) {
    if (k.eps == 1) degree = std::max(degree, k.z);
  }
  TPolynomial t = TPolynomial::zero(target, degree);
  bool shift_seen = false;
  for (const auto& [k, v] : q.terms()) {
    const bool base = k.beta.is_zero() && k.z >= 0;
    if (base && k.eps == 0 && k.z == 1 && k.basis == 0 && v == -1) {
      shift_seen = true;
    } else if (base && k.eps == 1) {
      t.coeffs[static_cast<std::size_t>(k.z)][k.basis] = v;
    } else {
      throw ContractError("series is not a dilaton-shifted t(z)");
    }
  }
  if (!shift_seen) throw ContractError("series lacks the -z 1 dilaton summand");
  return t;
}

EndoSeries::EndoSeries(TargetPtr target, Truncation trunc) : target_(std::move(target)), trunc_(trunc) {}

EndoSeries EndoSeries::identity(TargetPtr target, Truncation trunc) {
  EndoSeries out(target, trunc);
  for (std::size_t a = 0; a < target->size(); ++a) out.add_term(EndoKey{0, a, a, target->zero_class(), 0}, 1);
  return out;
}

void EndoSeries::add_term(const EndoKey& key, const Rational& c) {
  if (c == 0 || !trunc_.admits(key.beta, key.eps)) return;
  trunc_.check_window(key.z);
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational EndoSeries::coefficient(const EndoKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

void EndoSeries::set_column(std::size_t col, const GiventalSeries& image) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->first.col == col ? terms_.erase(it) : std::next(it);
  }
  for (const auto& [k, v] : image.terms()) add_term(EndoKey{k.z, k.basis, col, k.beta, k.eps}, v);
}

GiventalSeries EndoSeries::column(std::size_t col) const {
  GiventalSeries out(target_, trunc_);
  for (const auto& [k, v] : terms_) {
    if (k.col == col) out.add_term(k.z, k.row, k.beta, k.eps, v);
  }
  return out;
}

EndoSeries compose(const EndoSeries& a, const EndoSeries& b, bool flip_second) {
  if (!(a.trunc() == b.trunc())) throw ContractError("compose: truncation mismatch");
  EndoSeries out(a.target(), a.trunc());
  std::map<std::size_t, std::vector<const std::pair<const EndoKey, Rational>*>> b_by_row;
  for (const auto& e : b.terms()) b_by_row[e.first.row].push_back(&e);
  for (const auto& [ka, va] : a.terms()) {
    auto it = b_by_row.find(ka.col);
    if (it == b_by_row.end()) continue;
    for (const auto* eb : it->second) {
      const auto& [kb, vb] = *eb;
      Grade g = ka.grade() + kb.grade();
      if (!a.trunc().admits(g.beta, g.eps)) continue;
      Rational v = va * vb;
      if (flip_second && kb.z % 2 != 0) v = -v;
      out.add_term(EndoKey{ka.z + kb.z, ka.row, kb.col, g.beta, g.eps}, v);
    }
  }
  return out;
}

Givental::Givental(std::shared_ptr<Engine> engine, TPolynomial t, Truncation trunc)
    : engine_(std::move(engine)), t_(std::move(t)), trunc_(trunc) {
  if (!engine_) throw ContractError("Givental needs an engine");
  trunc_.validate();
  if (t_.degree() > trunc_.z_max - 1) {
    throw ConfigError("t(z) has degree " + std::to_string(t_.degree()) + " but z_max = " + std::to_string(trunc_.z_max));
  }
  for (std::size_t k = 0; k < t_.coeffs.size(); ++k) {
    if (t_.coeffs[k].size() != target().size()) throw ContractError("t(z) coefficient has the wrong size");
    for (std::size_t a = 0; a < target().size(); ++a) {
      if (t_.coeffs[k][a] != 0) monomials_.push_back(Monomial{static_cast<int>(k), a, t_.coeffs[k][a]});
    }
  }
}

std::vector<std::pair<NovikovDegree, int>> Givental::stable_range(int extra) const {
  std::vector<std::pair<NovikovDegree, int>> out;
  for (const auto& beta : target().effective_classes(trunc_.novikov_order)) {
    for (int n = 0; n <= trunc_.epsilon_order; ++n) {
      if (is_stable(beta, n + extra) && n + extra > 0) out.emplace_back(beta, n);
    }
  }
  return out;
}

const std::map<int, Rational>& Givental::raw_bracket(const BracketKey& key) {
  if (auto it = brackets_.find(key); it != brackets_.end()) return it->second;

  const auto& tgt = target();
  const bool has_free = key.free_class >= 0;
  const int points = static_cast<int>(key.fixed.size()) + key.n + (has_free ? 1 : 0);
  if (!is_stable(key.beta, points)) throw StabilityError("bracket outside the stable range");
  int budget = vdim(tgt, key.beta, points);
  for (const auto& i : key.fixed) budget -= tgt.degree(i.basis) + i.psi_power;
  if (has_free) budget -= tgt.degree(static_cast<std::size_t>(key.free_class));

  std::map<int, Rational> out;
  std::vector<std::size_t> chosen;
  // Multisets of n monomials as nondecreasing index sequences; weight prod c / prod mult!.
  std::function<void(std::size_t, int)> walk = [&](std::size_t start, int left) {
    if (static_cast<int>(chosen.size()) == key.n) {
      if (left < 0 || (!has_free && left != 0)) return;
      Rational weight = 1;
      std::vector<Insertion> ins = key.fixed;
      std::size_t run = 0;
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto& m = monomials_[chosen[i]];
        weight *= m.coeff;
        run = (i > 0 && chosen[i] == chosen[i - 1]) ? run + 1 : 1;
        weight /= static_cast<unsigned long>(run);
        ins.push_back(Insertion{m.alpha, m.k});
      }
      const int l = has_free ? left : 0;
      if (has_free) ins.push_back(Insertion{static_cast<std::size_t>(key.free_class), l});
      Rational v = engine_->correlator(key.beta, std::move(ins));
      if (v == 0) return;
      Rational& slot = out[l];
      slot += weight * v;
      if (slot == 0) out.erase(l);
      return;
    }
    for (std::size_t i = start; i < monomials_.size(); ++i) {
      const int cost = tgt.degree(monomials_[i].alpha) + monomials_[i].k;
      if (cost > left) continue;
      chosen.push_back(i);
      walk(i, left - cost);
      chosen.pop_back();
    }
  };
  if (budget >= 0) walk(0, budget);
  return brackets_.emplace(key, std::move(out)).first->second;
}

Rational Givental::bracket(const NovikovDegree& beta, int n, const std::vector<Insertion>& fixed) {
  auto sorted = fixed;
  std::sort(sorted.begin(), sorted.end());
  const auto& raw = raw_bracket(BracketKey{beta, n, std::move(sorted), -1});
  auto it = raw.find(0);
  return it == raw.end() ? Rational(0) : it->second;
}

std::map<int, Rational> Givental::kernel_bracket(const NovikovDegree& beta, int n, const std::vector<Insertion>& fixed,
                                                 std::size_t free_class, int sign) {
  if (sign != 1 && sign != -1) throw ContractError("kernel sign must be +1 or -1");
  auto sorted = fixed;
  std::sort(sorted.begin(), sorted.end());
  const auto& raw = raw_bracket(BracketKey{beta, n, std::move(sorted), static_cast<long>(free_class)});
  std::map<int, Rational> out;
  for (const auto& [l, v] : raw) out[-1 - l] = (sign < 0 && l % 2 == 0) ? Rational(-v) : v;
  return out;
}

GiventalSeries Givental::dilaton_shift() const { return gwcone::dilaton_shift(t_, target_ptr(), trunc_); }

ScalarSeries Givental::descendant_potential() {
  ScalarSeries out;
  for (const auto& [beta, n] : stable_range(0)) out.add_term(0, grade_of(beta, n), bracket(beta, n, {}));
  return out;
}

GiventalSeries Givental::cone_point() {
  GiventalSeries out = dilaton_shift();
  for (const auto& [beta, n] : stable_range(1)) {
    for (std::size_t g = 0; g < target().size(); ++g) {
      for (const auto& [z, v] : kernel_bracket(beta, n, {}, g, -1)) out.add_vector(z, target().dual_vector(g), grade_of(beta, n), v);
    }
  }
  return out;
}

GiventalSeries Givental::s_apply(const GiventalSeries& f) {
  GiventalSeries out = f;
  const auto range = stable_range(2);
  for (const auto& [key, c] : f.terms()) {
    for (const auto& [beta, n] : range) {
      const Grade g = key.grade() + grade_of(beta, n);
      if (!trunc_.admits(g.beta, g.eps)) continue;
      for (std::size_t gamma = 0; gamma < target().size(); ++gamma) {
        for (const auto& [z, v] : kernel_bracket(beta, n, {Insertion{gamma, 0}}, key.basis, 1)) {
          out.add_vector(key.z + z, target().dual_vector(gamma), g, c * v);
        }
      }
    }
  }
  return out;
}

EndoSeries Givental::s_matrix() {
  EndoSeries out(target_ptr(), trunc_);
  for (std::size_t a = 0; a < target().size(); ++a) {
    GiventalSeries basis(target_ptr(), trunc_);
    basis.add_term(0, a, target().zero_class(), 0, 1);
    out.set_column(a, s_apply(basis));
  }
  return out;
}

EndoSeries Givental::s_adjoint_matrix() {
  EndoSeries out(target_ptr(), trunc_);
  for (std::size_t a = 0; a < target().size(); ++a) {
    GiventalSeries col(target_ptr(), trunc_);
    col.add_term(0, a, target().zero_class(), 0, 1);
    for (const auto& [beta, n] : stable_range(2)) {
      for (std::size_t b = 0; b < target().size(); ++b) {
        for (const auto& [z, v] : kernel_bracket(beta, n, {Insertion{a, 0}}, b, 1)) {
          col.add_vector(z, target().dual_vector(b), grade_of(beta, n), v);
        }
      }
    }
    out.set_column(a, col);
  }
  return out;
}

GiventalSeries Givental::s_adjoint_corr_apply(const GiventalSeries& r, int sign) {
  GiventalSeries out = r;
  const auto range = stable_range(2);
  for (const auto& [key, c] : r.terms()) {
    if (key.z < 0) throw ContractError("s_adjoint_corr_apply needs a z-polynomial argument");
    for (const auto& [beta, n] : range) {
      const Grade g = key.grade() + grade_of(beta, n);
      if (!trunc_.admits(g.beta, g.eps)) continue;
      for (std::size_t gamma = 0; gamma < target().size(); ++gamma) {
        for (const auto& [z, v] : kernel_bracket(beta, n, {Insertion{key.basis, key.z}}, gamma, sign)) {
          out.add_vector(z, target().dual_vector(gamma), g, c * v);
        }
      }
    }
  }
  return out;
}

GiventalSeries Givental::tangent_vector(std::size_t alpha, int k) {
  if (alpha >= target().size() || k < 0 || k > trunc_.z_max - 1) throw ContractError("tangent direction out of range");
  GiventalSeries out(target_ptr(), trunc_);
  out.add_term(k, alpha, target().zero_class(), 0, 1);
  for (const auto& [beta, n] : stable_range(2)) {
    for (std::size_t gamma = 0; gamma < target().size(); ++gamma) {
      const auto terms = kernel_bracket(beta, n, {Insertion{alpha, k}}, gamma, -1);
      for (const auto& [z, v] : terms) out.add_vector(z, target().dual_vector(gamma), grade_of(beta, n), v);
    }
  }
  return out;
}

ScalarSeries Givental::double_bracket(const std::vector<Insertion>& fixed) {
  if (fixed.empty()) throw ContractError("double bracket needs at least one fixed insertion");
  ScalarSeries out;
  for (const auto& [beta, n] : stable_range(static_cast<int>(fixed.size()))) {
    out.add_term(0, grade_of(beta, n), bracket(beta, n, fixed));
  }
  return out;
}

// z^{-k} coefficient of S(f), paired with phi_alpha, written through double brackets:
//   <<psi^{k-1} q(psi), phi_alpha>>_{0,2} + (-1)^k <<phi_alpha psi^{k-1}>>_{0,1}
//   + sum_{r=0}^{k-2} (-1)^{1+r} sum_g <<phi_g psi^r>>_{0,1} <<phi^g psi^{k-2-r}, phi_alpha>>_{0,2},
// with q(psi) = t(psi) - psi 1 substituted term by term (t carries one power of eps).
ScalarSeries Givental::universal_relation(int k, std::size_t alpha) {
  if (k < 1) throw ContractError("universal relations start at k = 1");
  const auto& tgt = target();
  const Grade one_eps = grade_of(tgt.zero_class(), 1);
  ScalarSeries out;
  for (const auto& m : monomials_) {
    ScalarSeries term = double_bracket({Insertion{m.alpha, k - 1 + m.k}, Insertion{alpha, 0}}).shifted(one_eps, trunc_);
    term *= m.coeff;
    out += term;
  }
  out -= double_bracket({Insertion{0, k}, Insertion{alpha, 0}});
  ScalarSeries one_point = double_bracket({Insertion{alpha, k - 1}});
  if (k % 2 != 0) one_point *= -1;
  out += one_point;
  const auto& g_inv = tgt.inverse_pairing();
  for (int r = 0; r <= k - 2; ++r) {
    for (std::size_t g = 0; g < tgt.size(); ++g) {
      ScalarSeries left = double_bracket({Insertion{g, r}});
      if (left.is_zero()) continue;
      ScalarSeries right;
      for (std::size_t s = 0; s < tgt.size(); ++s) {
        if (g_inv[g][s] == 0) continue;
        ScalarSeries piece = double_bracket({Insertion{s, k - 2 - r}, Insertion{alpha, 0}});
        piece *= g_inv[g][s];
        right += piece;
      }
      ScalarSeries product = left.multiply(right, trunc_);
      if (r % 2 == 0) product *= -1;
      out += product;
    }
  }
  return out;
}

CheckResult Givental::check_polynomiality() {
  return timed([&] {
    CheckResult r{"polynomiality", "S(f) in zH+"};
    GiventalSeries sl = s_apply(cone_point());
    auto verdict = is_z_polynomial(sl, PolynomialMode::z_h_plus);
    r.passed = verdict.holds;
    for (const auto& k : verdict.offending) {
      auto j = key_to_json(k);
      j["value"] = value_json(sl.coefficient(k));
      r.offending.push_back(std::move(j));
    }
    r.details = std::to_string(sl.size()) + " retained terms, " + std::to_string(verdict.offending.size()) +
                " at z^{<=0}";
    if (sl.size() == 1 && sl.terms().begin()->first.z == 1 && sl.terms().begin()->second == -1) r.details += "; value -z";
    return r;
  });
}

CheckResult Givental::check_inverse() {
  return timed([&] {
    CheckResult r{"inverse", "S(z) S*(-z) = Id"};
    EndoSeries product = compose(s_matrix(), s_adjoint_matrix(), true);
    EndoSeries id = EndoSeries::identity(target_ptr(), trunc_);
    std::set<EndoKey> keys;
    for (const auto& [k, v] : product.terms()) keys.insert(k);
    for (const auto& [k, v] : id.terms()) keys.insert(k);
    for (const auto& k : keys) {
      const Rational got = product.coefficient(k), want = id.coefficient(k);
      if (got == want) continue;
      auto j = endo_key_json(k);
      j["value"] = value_json(got);
      j["expected"] = value_json(want);
      r.offending.push_back(std::move(j));
    }
    r.passed = r.offending.empty();
    r.details = std::to_string(product.terms().size()) + " product entries";
    return r;
  });
}

CheckResult Givental::check_adjoint_transpose() {
  return timed([&] {
    CheckResult r{"inverse", "S* is the pairing adjoint of S"};
    const EndoSeries s = s_matrix(), sa = s_adjoint_matrix();
    const auto& gram = target().pairing();
    const std::size_t size = target().size();
    // S^T G == G S* entrywise.
    std::map<EndoKey, Rational> lhs, rhs;
    for (const auto& [k, v] : s.terms()) {
      for (std::size_t c = 0; c < size; ++c) {
        if (gram[k.row][c] != 0) lhs[EndoKey{k.z, k.col, c, k.beta, k.eps}] += v * gram[k.row][c];
      }
    }
    for (const auto& [k, v] : sa.terms()) {
      for (std::size_t row = 0; row < size; ++row) {
        if (gram[row][k.row] != 0) rhs[EndoKey{k.z, row, k.col, k.beta, k.eps}] += gram[row][k.row] * v;
      }
    }
    std::set<EndoKey> keys;
    for (const auto& [k, v] : lhs) keys.insert(k);
    for (const auto& [k, v] : rhs) keys.insert(k);
    for (const auto& k : keys) {
      const Rational a = lhs.count(k) ? lhs[k] : Rational(0), b = rhs.count(k) ? rhs[k] : Rational(0);
      if (a == b) continue;
      auto j = endo_key_json(k);
      j["S_transpose_G"] = value_json(a);
      j["G_S_adjoint"] = value_json(b);
      r.offending.push_back(std::move(j));
    }
    r.passed = r.offending.empty();
    return r;
  });
}

CheckResult Givental::check_universal_relations(int k_max) {
  return timed([&] {
    CheckResult r{"universal", "universal relations k=2.." + std::to_string(k_max)};
    if (k_max < 2) throw ContractError("k_max must be at least 2");
    const GiventalSeries sl = s_apply(cone_point());
    int evaluated = 0;
    for (int k = 2; k <= k_max; ++k) {
      for (std::size_t a = 0; a < target().size(); ++a) {
        ScalarSeries rel = universal_relation(k, a);
        ++evaluated;
        for (auto j : scalar_offending(rel)) {
          j["k"] = k;
          j["alpha"] = a;
          j["kind"] = "relation";
          r.offending.push_back(std::move(j));
        }
        // Independent route: pair the z^{-k} coefficient of S(f) with phi_alpha.
        if (-k < trunc_.z_min) continue;
        ScalarSeries direct;
        for (const auto& [key, v] : sl.terms()) {
          if (key.z == -k) direct.add_term(0, key.grade(), v * target().pairing()[key.basis][a]);
        }
        if (!(direct == rel)) {
          r.offending.push_back({{"k", k}, {"alpha", a}, {"kind", "disagrees with z^{-k} coefficient of S(f)"}});
        }
      }
    }
    r.passed = r.offending.empty();
    r.details = std::to_string(evaluated) + " relations";
    return r;
  });
}

CheckResult Givental::check_lagrangian(const GiventalSeries& ru, const GiventalSeries& uu) {
  return timed([&] {
    CheckResult r{"lagrangian", "Omega(T_r, T_u) = 0"};
    ScalarSeries w = omega(s_adjoint_corr_apply(ru, -1), s_adjoint_corr_apply(uu, -1));
    r.offending = scalar_offending(w);
    r.passed = w.is_zero();
    return r;
  });
}

CheckResult Givental::check_lagrangian_basis(int max_power) {
  return timed([&] {
    CheckResult r("lagrangian", "Omega(T_r, T_u) = 0 for basis r, u up to z^" + std::to_string(max_power));
    std::vector<std::pair<nlohmann::json, GiventalSeries>> tangents;
    for (std::size_t a = 0; a < target().size(); ++a) {
      for (int j = 0; j <= max_power; ++j) {
        GiventalSeries mono(target_ptr(), trunc_);
        mono.add_term(j, a, target().zero_class(), 0, 1);
        tangents.emplace_back(nlohmann::json{{"basis", a}, {"z_exp", j}}, s_adjoint_corr_apply(mono, -1));
      }
    }
    for (const auto& [rj, tr] : tangents) {
      for (const auto& [uj, tu] : tangents) {
        for (auto j : scalar_offending(omega(tr, tu))) {
          j["r"] = rj;
          j["u"] = uj;
          r.offending.push_back(std::move(j));
        }
      }
    }
    r.passed = r.offending.empty();
    r.details = std::to_string(tangents.size() * tangents.size()) + " ordered pairs";
    return r;
  });
}

std::vector<CheckResult> Givental::check_cone_in_tangent() {
  std::vector<CheckResult> out;
  out.push_back(timed([&] {
    CheckResult r = check_polynomiality();
    r.suite = "tangent";
    r.name = "S(z) f in zH+ (f in zT_f L)";
    return r;
  }));
  out.push_back(timed([&] {
    CheckResult r{"tangent", "tangent vectors in span of z^j S*(-z) phi_b (empirical)"};
    const auto& tgt = target();
    const EndoSeries sa = s_adjoint_matrix();
    std::vector<Grade> grades;
    for (const auto& beta : tgt.effective_classes(trunc_.novikov_order)) {
      for (int e = 0; e <= trunc_.epsilon_order; ++e) grades.push_back(grade_of(beta, e));
    }
    // Unknowns: coefficient of Q^beta eps^e z^j S*(-z) phi_b.
    struct Unknown {
      Grade g;
      std::size_t b;
      int j;
    };
    std::vector<Unknown> unknowns;
    for (const auto& g : grades) {
      for (std::size_t b = 0; b < tgt.size(); ++b) {
        for (int j = 0; j <= trunc_.z_max - 1; ++j) unknowns.push_back(Unknown{g, b, j});
      }
    }
    std::map<SeriesKey, std::size_t> rows;
    auto row_of = [&](const SeriesKey& k) { return rows.try_emplace(k, rows.size()).first->second; };
    std::vector<std::map<std::size_t, Rational>> columns(unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& [g, b, j] = unknowns[u];
      for (const auto& [k, v] : sa.terms()) {
        if (k.col != b) continue;
        const Grade total = g + k.grade();
        if (!trunc_.admits(total.beta, total.eps)) continue;
        const Rational value = k.z % 2 == 0 ? v : Rational(-v);
        columns[u][row_of(SeriesKey{k.z + j, k.row, total.beta, total.eps})] += value;
      }
    }
    std::vector<std::pair<std::string, GiventalSeries>> targets;
    for (std::size_t a = 0; a < tgt.size(); ++a) {
      for (int k = 0; k <= t_.degree(); ++k) {
        targets.emplace_back("d f/d q_" + std::to_string(k) + "^" + std::to_string(a), tangent_vector(a, k));
      }
    }
    for (auto& [name, vec] : targets) {
      for (const auto& [k, v] : vec.terms()) row_of(k);
    }
    RationalMatrix a(rows.size(), std::vector<Rational>(unknowns.size()));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      for (const auto& [row, v] : columns[u]) a[row][u] = v;
    }
    const std::size_t rank_a = matrix_rank(a);
    r.details = "rank(A) = " + std::to_string(rank_a) + " with " + std::to_string(unknowns.size()) + " unknowns, " +
                std::to_string(rows.size()) + " equations";
    for (auto& [name, vec] : targets) {
      RationalMatrix aug = a;
      for (auto& row : aug) row.push_back(0);
      for (const auto& [k, v] : vec.terms()) aug[rows.at(k)].back() = v;
      const std::size_t rank_aug = matrix_rank(aug);
      r.details += "; " + name + ": rank[A|b] = " + std::to_string(rank_aug);
      if (rank_aug != rank_a) r.offending.push_back({{"vector", name}, {"rank_A", rank_a}, {"rank_Ab", rank_aug}});
    }
    r.passed = r.offending.empty();
    return r;
  }));
  return out;
}

}  // namespace gwcone

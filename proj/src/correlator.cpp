#include "gwcone/correlator.hpp"

#include <algorithm>
#include <set>

#include "gwcone/errors.hpp"

namespace gwcone {

namespace {

// Keys currently being evaluated on this thread; re-entry means a reduction cycle.
thread_local std::set<std::pair<const Engine*, CorrelatorKey>> in_progress;

class InProgressGuard {
 public:
  InProgressGuard(const Engine* engine, const CorrelatorKey& key) : entry_(engine, key) {
    if (!in_progress.insert(entry_).second) {
      throw std::logic_error("reduction cycle while evaluating " + to_string(key));
    }
  }
  ~InProgressGuard() { in_progress.erase(entry_); }
  InProgressGuard(const InProgressGuard&) = delete;
  InProgressGuard& operator=(const InProgressGuard&) = delete;

 private:
  std::pair<const Engine*, CorrelatorKey> entry_;
};

std::vector<Insertion> without(const std::vector<Insertion>& ins, std::size_t slot) {
  std::vector<Insertion> out;
  out.reserve(ins.size() - 1);
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (i != slot) out.push_back(ins[i]);
  }
  return out;
}

/// All classes beta' with 0 <= beta' <= beta componentwise.
std::vector<NovikovDegree> sub_classes(const NovikovDegree& beta) {
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

CorrelatorKey::CorrelatorKey(NovikovDegree beta, std::vector<Insertion> insertions)
    : beta_(std::move(beta)), insertions_(std::move(insertions)) {
  for (const auto& ins : insertions_) {
    if (ins.psi_power < 0) throw ContractError("negative psi power in correlator key");
  }
  std::sort(insertions_.begin(), insertions_.end());
}

int CorrelatorKey::psi_total() const {
  int s = 0;
  for (const auto& i : insertions_) s += i.psi_power;
  return s;
}

std::string to_string(const CorrelatorKey& key) {
  std::string out = "<";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(key.insertions()[i].basis) + "," + std::to_string(key.insertions()[i].psi_power) + ")";
  }
  return out + ">_{0," + std::to_string(key.size()) + "," + to_string(key.beta()) + "}";
}

int vdim(const TargetSpace& t, const NovikovDegree& beta, int n) { return t.dim() - 3 + t.c1_pairing(beta) + n; }

bool is_stable(const NovikovDegree& beta, int n) { return !beta.is_zero() || n >= 3; }

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::dimension: return "dimension";
    case Rule::classical: return "classical";
    case Rule::string_equation: return "string";
    case Rule::divisor_equation: return "divisor";
    case Rule::topological_recursion: return "trr";
    case Rule::primary: return "primary";
    case Rule::few_points: return "few-points";
  }
  return "?";
}

Engine::Engine(TargetPtr target) : target_(std::move(target)) {
  if (!target_) throw ContractError("Engine needs a target");
}

std::size_t Engine::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

bool Engine::passes_dimension(const CorrelatorKey& key) const {
  int total = 0;
  for (const auto& ins : key.insertions()) total += target_->degree(ins.basis) + ins.psi_power;
  return total == vdim(*target_, key.beta(), static_cast<int>(key.size()));
}

Rational Engine::correlator(const CorrelatorKey& key) {
  if (key.beta().rank() != target_->class_rank()) throw ContractError("Novikov degree has the wrong rank");
  for (const auto& ins : key.insertions()) {
    if (ins.basis >= target_->size()) throw ContractError("basis index out of range in " + to_string(key));
  }
  if (!is_stable(key.beta(), static_cast<int>(key.size()))) {
    throw StabilityError("unstable correlator " + to_string(key));
  }
  if (key.size() == 0) throw ContractError("zero-insertion correlators are not supported");
  if (!passes_dimension(key)) return 0;
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Rational value = compute(key);
  std::lock_guard lock(mutex_);
  cache_.try_emplace(key, value);
  return value;
}

Rule Engine::selected_rule(const CorrelatorKey& key) const {
  if (!passes_dimension(key)) return Rule::dimension;
  if (key.beta().is_zero()) return Rule::classical;
  if (key.size() < 3) return Rule::few_points;
  const auto& ins = key.insertions();
  for (const auto& i : ins) {
    if (i.basis == 0 && i.psi_power == 0) return Rule::string_equation;
  }
  for (const auto& i : ins) {
    if (i.psi_power == 0 && target_->is_divisor(i.basis)) return Rule::divisor_equation;
  }
  for (const auto& i : ins) {
    if (i.psi_power > 0) return Rule::topological_recursion;
  }
  return Rule::primary;
}

Rational Engine::compute(const CorrelatorKey& key) {
  InProgressGuard guard(this, key);
  return apply(key, selected_rule(key));
}

Rational Engine::evaluate_with(const CorrelatorKey& key, Rule rule) {
  if (!is_stable(key.beta(), static_cast<int>(key.size()))) throw StabilityError("unstable correlator " + to_string(key));
  return apply(key, rule);
}

Rational Engine::apply(const CorrelatorKey& key, Rule rule) {
  const auto& ins = key.insertions();
  const bool curve = !key.beta().is_zero();
  auto not_applicable = [&] { return ContractError("rule " + to_string(rule) + " does not apply to " + to_string(key)); };
  switch (rule) {
    case Rule::dimension:
      if (passes_dimension(key)) throw not_applicable();
      return 0;
    case Rule::classical:
      if (curve) throw not_applicable();
      return classical(key);
    case Rule::string_equation:
      for (std::size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].basis == 0 && ins[i].psi_power == 0 && curve && ins.size() >= 3) return string_equation(key, i);
      }
      throw not_applicable();
    case Rule::divisor_equation:
      for (std::size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].psi_power == 0 && target_->is_divisor(ins[i].basis) && curve && ins.size() >= 3) {
          return divisor_equation(key, i);
        }
      }
      throw not_applicable();
    case Rule::topological_recursion:
      if (!curve || ins.size() < 3) throw not_applicable();
      for (std::size_t c = 0; c < ins.size(); ++c) {
        if (ins[c].psi_power == 0) continue;
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < ins.size() && others.size() < 2; ++j) {
          if (j != c) others.push_back(j);
        }
        return topological_recursion(key, c, others[0], others[1]);
      }
      throw not_applicable();
    case Rule::primary:
      if (!curve || ins.size() < 3) throw not_applicable();
      return primary_backend(key);
    case Rule::few_points:
      if (!curve || ins.size() >= 3) throw not_applicable();
      return few_points(key);
  }
  throw not_applicable();
}

// Degree-zero invariants: M_{0,n}(X,0) = M_{0,n} x X, and
// int_{M_{0,n}} psi_1^{k_1}...psi_n^{k_n} = (n-3)! / prod k_i! when sum k_i = n-3.
Rational Engine::classical(const CorrelatorKey& key) const {
  const int n = static_cast<int>(key.size());
  if (key.psi_total() != n - 3) return 0;
  std::vector<std::size_t> classes;
  Rational multinomial = factorial(n - 3);
  for (const auto& ins : key.insertions()) {
    classes.push_back(ins.basis);
    multinomial /= factorial(ins.psi_power);
  }
  return multinomial * target_->integrate_product(classes);
}

// String equation (Witten; Kontsevich-Manin):
//   <1, x_1 psi^{k_1}, ..., x_n psi^{k_n}>_{0,n+1,beta} = sum_j <..., x_j psi^{k_j - 1}, ...>_{0,n,beta}.
Rational Engine::string_equation(const CorrelatorKey& key, std::size_t unit_slot) {
  auto rest = without(key.insertions(), unit_slot);
  Rational total = 0;
  for (std::size_t j = 0; j < rest.size(); ++j) {
    if (rest[j].psi_power == 0) continue;
    auto lowered = rest;
    --lowered[j].psi_power;
    total += correlator(key.beta(), std::move(lowered));
  }
  return total;
}

// Divisor equation with descendants (Kontsevich-Manin; see Cox-Katz, Sec. 10.1):
//   <D, x_1 psi^{k_1}, ...>_{0,n+1,beta} = (D.beta) <x_1 psi^{k_1}, ...>_{0,n,beta}
//                                        + sum_j <..., (x_j D) psi^{k_j - 1}, ...>_{0,n,beta}.
Rational Engine::divisor_equation(const CorrelatorKey& key, std::size_t divisor_slot) {
  const std::size_t d = key.insertions()[divisor_slot].basis;
  auto rest = without(key.insertions(), divisor_slot);
  Rational total = Rational(target_->divisor_pairing(d, key.beta())) * correlator(key.beta(), rest);
  const CohVector divisor = target_->basis_vector(d);
  for (std::size_t j = 0; j < rest.size(); ++j) {
    if (rest[j].psi_power == 0) continue;
    CohVector product = cup_product(*target_, target_->basis_vector(rest[j].basis), divisor);
    auto base = rest;
    for (std::size_t c = 0; c < product.size(); ++c) {
      if (product[c] == 0) continue;
      base[j] = Insertion{c, rest[j].psi_power - 1};
      total += product[c] * correlator(key.beta(), base);
    }
  }
  return total;
}

// Genus-zero topological recursion (Witten; Kontsevich-Manin): on M_{0,n}(X,beta), psi_c equals the
// boundary divisor separating c from {left, right}, so
//   <x_c psi^{k_c}, x_l, x_r, rest> = sum_{beta'+beta''=beta} sum_{S u T = rest} sum_{e,f} g^{ef}
//       <x_c psi^{k_c - 1}, S, phi_e>_{beta'} <phi_f, x_l, x_r, T>_{beta''}.
Rational Engine::topological_recursion(const CorrelatorKey& key, std::size_t carrier, std::size_t left,
                                       std::size_t right) {
  const auto& ins = key.insertions();
  if (carrier == left || carrier == right || left == right || std::max({carrier, left, right}) >= ins.size()) {
    throw ContractError("TRR needs three distinct insertions");
  }
  if (ins[carrier].psi_power == 0) throw ContractError("TRR carrier has no psi class");
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (i != carrier && i != left && i != right) rest.push_back(i);
  }
  const auto& g_inv = target_->inverse_pairing();
  const std::size_t basis = target_->size();
  Rational total = 0;
  for (const auto& beta1 : sub_classes(key.beta())) {
    const NovikovDegree beta2 = key.beta() - beta1;
    for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
      std::vector<Insertion> first{Insertion{ins[carrier].basis, ins[carrier].psi_power - 1}};
      std::vector<Insertion> second{ins[left], ins[right]};
      for (std::size_t r = 0; r < rest.size(); ++r) {
        ((mask >> r) & 1u ? first : second).push_back(ins[rest[r]]);
      }
      const int n1 = static_cast<int>(first.size()) + 1;
      if (!is_stable(beta1, n1)) continue;
      int used = 0;
      for (const auto& i : first) used += target_->degree(i.basis) + i.psi_power;
      const int node_degree = vdim(*target_, beta1, n1) - used;
      for (std::size_t e = 0; e < basis; ++e) {
        if (target_->degree(e) != node_degree) continue;
        Rational left_value;
        bool left_known = false;
        for (std::size_t f = 0; f < basis; ++f) {
          if (g_inv[e][f] == 0) continue;
          auto right_ins = second;
          right_ins.push_back(Insertion{f, 0});
          Rational right_value = correlator(beta2, std::move(right_ins));
          if (right_value == 0) continue;
          if (!left_known) {
            auto left_ins = first;
            left_ins.push_back(Insertion{e, 0});
            left_value = correlator(beta1, std::move(left_ins));
            left_known = true;
          }
          total += g_inv[e][f] * left_value * right_value;
        }
      }
    }
  }
  return total;
}

std::size_t Engine::divisor_class_for(const NovikovDegree& beta) const {
  for (std::size_t a = 0; a < target_->size(); ++a) {
    if (target_->is_divisor(a) && target_->divisor_pairing(a, beta) != 0) return a;
  }
  throw CapabilityError("target " + target_->name() + " has no divisor pairing nontrivially with " + to_string(beta));
}

// beta != 0 with one or two insertions.
//
// Primary values: a unit insertion kills the invariant (string equation with nothing to lower) and
// divisor insertions are removed by the divisor equation, leaving the target backend.
//
// Descendant values: the string system alone does not determine two-point descendants, so a divisor D
// with D.beta != 0 is adjoined and the divisor equation is inverted:
//   <x>_{0,n,beta} = ( <D, x>_{0,n+1,beta} - sum_j <..., (x_j D) psi^{k_j - 1}, ...>_{0,n,beta} ) / (D.beta),
// with the three-point term evaluated by TRR rather than by the divisor equation.
Rational Engine::few_points(const CorrelatorKey& key) {
  const auto& ins = key.insertions();
  const bool primary = std::all_of(ins.begin(), ins.end(), [](const Insertion& i) { return i.psi_power == 0; });
  if (primary) {
    std::vector<Insertion> remaining;
    Rational factor = 1;
    for (const auto& i : ins) {
      if (i.basis == 0) return 0;
      if (target_->is_divisor(i.basis)) {
        factor *= target_->divisor_pairing(i.basis, key.beta());
      } else {
        remaining.push_back(i);
      }
    }
    if (factor == 0) return 0;
    if (remaining.size() == ins.size()) return primary_backend(key);
    if (remaining.empty()) return factor * primary_backend(CorrelatorKey(key.beta(), {}));
    return factor * correlator(key.beta(), std::move(remaining));
  }

  const std::size_t d = divisor_class_for(key.beta());
  const Rational pairing = target_->divisor_pairing(d, key.beta());
  std::vector<Insertion> augmented = ins;
  augmented.push_back(Insertion{d, 0});
  CorrelatorKey aug(key.beta(), augmented);
  Rational total;
  if (aug.size() < 3) {
    total = correlator(aug);
  } else {
    const auto& a = aug.insertions();
    std::size_t carrier = 0;
    while (a[carrier].psi_power == 0) ++carrier;
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != carrier) others.push_back(j);
    }
    total = topological_recursion(aug, carrier, others[0], others[1]);
  }
  const CohVector divisor = target_->basis_vector(d);
  for (std::size_t j = 0; j < ins.size(); ++j) {
    if (ins[j].psi_power == 0) continue;
    CohVector product = cup_product(*target_, target_->basis_vector(ins[j].basis), divisor);
    auto base = ins;
    for (std::size_t c = 0; c < product.size(); ++c) {
      if (product[c] == 0) continue;
      base[j] = Insertion{c, ins[j].psi_power - 1};
      total -= product[c] * correlator(key.beta(), base);
    }
  }
  return total / pairing;
}

// Primary invariants with only classes of degree >= 2 (or none at all).
Rational Engine::primary_backend(const CorrelatorKey& key) {
  if (!target_->builtin() || target_->dim() == 0) {
    throw CapabilityError("no primary backend for target " + target_->name() + " at " + to_string(key.beta()));
  }
  for (const auto& i : key.insertions()) {
    if (i.psi_power != 0 || i.basis == 0 || target_->is_divisor(i.basis)) {
      throw ContractError("primary backend called on " + to_string(key));
    }
  }
  if (target_->dim() == 1) return degree_one_primary(key);
  const int d = key.beta().degrees[0];
  if (static_cast<int>(key.size()) != 3 * d - 1) return 0;
  return projective_plane_primary(d);
}

// P1: the only primary invariant left after string/divisor reduction is <>_{0,0,1}; it is fixed by the
// seed <pt, pt>_{0,2,1} = 1 (a unique line through two points) and the divisor equation, pt = H.
Rational Engine::degree_one_primary(const CorrelatorKey& key) {
  if (!key.insertions().empty()) throw ContractError("unexpected P1 primary " + to_string(key));
  if (key.beta().degrees[0] != 1) return 0;
  const Rational seed = 1;
  const Rational h = target_->divisor_pairing(1, key.beta());
  return seed / (h * h);
}

// P2: N_d = <pt^{3d-1}>_{0,3d-1,d}. N_1 = 1; for d >= 2 WDVV is applied to the four insertions
// (H, H | pt, pt) with 3d - 4 further points. The only term of degree d on either side is the
// (beta' = 0, S = {}) term on the left, which isolates N_d.
Rational Engine::projective_plane_primary(int d) {
  if (d == 1) return 1;
  const std::size_t hyper = 1, point = 2;
  const int rest = 3 * d - 4;
  const auto& g_inv = target_->inverse_pairing();
  const std::size_t basis = target_->size();
  const NovikovDegree beta{{d}};

  auto side_sum = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e4, bool skip_unknown,
                      Rational* unknown_coefficient) {
    Rational total = 0;
    for (int d1 = 0; d1 <= d; ++d1) {
      NovikovDegree b1{{d1}}, b2{{d - d1}};
      for (int s = 0; s <= rest; ++s) {
        const Rational mult = binomial(rest, s);
        for (std::size_t e = 0; e < basis; ++e) {
          std::vector<Insertion> left{{a, 0}, {b, 0}, {e, 0}};
          left.insert(left.end(), static_cast<std::size_t>(s), Insertion{point, 0});
          if (d1 == 0 && s == 0 && skip_unknown) {
            // <a, b, phi_e>_{0,3,0} <phi_f, c, e4, pt^rest>_{0,*,d}: the f = pt entry is N_d itself.
            const Rational cl = correlator(b1, left);
            for (std::size_t f = 0; f < basis; ++f) {
              if (g_inv[e][f] == 0 || cl == 0) continue;
              if (f == point) {
                *unknown_coefficient += g_inv[e][f] * cl;
                continue;
              }
              std::vector<Insertion> right{{f, 0}, {c, 0}, {e4, 0}};
              right.insert(right.end(), static_cast<std::size_t>(rest), Insertion{point, 0});
              total += g_inv[e][f] * cl * correlator(b2, std::move(right));
            }
            continue;
          }
          Rational lv;
          bool lv_known = false;
          for (std::size_t f = 0; f < basis; ++f) {
            if (g_inv[e][f] == 0) continue;
            std::vector<Insertion> right{{f, 0}, {c, 0}, {e4, 0}};
            right.insert(right.end(), static_cast<std::size_t>(rest - s), Insertion{point, 0});
            Rational rv = correlator(b2, std::move(right));
            if (rv == 0) continue;
            if (!lv_known) {
              lv = correlator(b1, left);
              lv_known = true;
            }
            total += mult * g_inv[e][f] * lv * rv;
          }
        }
      }
    }
    return total;
  };

  Rational unknown = 0, unused = 0;
  const Rational lhs = side_sum(hyper, hyper, point, point, true, &unknown);
  const Rational rhs = side_sum(hyper, point, hyper, point, false, &unused);
  if (unknown == 0) throw std::logic_error("WDVV does not isolate N_" + std::to_string(d));
  return (rhs - lhs) / unknown;
}

std::map<int, Rational> Engine::kernel_correlator(const NovikovDegree& beta, const std::vector<Insertion>& fixed,
                                                  const CohVector& gamma, int sign) {
  if (sign != 1 && sign != -1) throw ContractError("kernel sign must be +1 or -1");
  std::map<int, Rational> out;
  const int n = static_cast<int>(fixed.size()) + 1;
  if (!is_stable(beta, n)) throw StabilityError("unstable kernel correlator at " + to_string(beta));
  int used = 0;
  for (const auto& i : fixed) used += target_->degree(i.basis) + i.psi_power;
  for (std::size_t c = 0; c < gamma.size(); ++c) {
    if (gamma[c] == 0) continue;
    const int l = vdim(*target_, beta, n) - used - target_->degree(c);
    if (l < 0) continue;
    auto ins = fixed;
    ins.push_back(Insertion{c, l});
    Rational v = gamma[c] * correlator(beta, std::move(ins));
    if (v == 0) continue;
    if (sign < 0 && (l + 1) % 2 != 0) v = -v;
    out[-1 - l] += v;
    if (out[-1 - l] == 0) out.erase(-1 - l);
  }
  return out;
}

}  // namespace gwcone

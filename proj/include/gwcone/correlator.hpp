#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "gwcone/rational.hpp"
#include "gwcone/target.hpp"

namespace gwcone {

/// phi_basis psi^psi_power at one marked point.
struct Insertion {
  std::size_t basis = 0;
  int psi_power = 0;

  auto operator<=>(const Insertion&) const = default;
  bool operator==(const Insertion&) const = default;
};

/// <phi_{a_1} psi^{k_1}, ..., phi_{a_n} psi^{k_n}>_{0,n,beta} with insertions kept sorted,
/// so any permutation of the same insertions produces the same key.
class CorrelatorKey {
 public:
  CorrelatorKey() = default;
  CorrelatorKey(NovikovDegree beta, std::vector<Insertion> insertions);

  const NovikovDegree& beta() const { return beta_; }
  const std::vector<Insertion>& insertions() const { return insertions_; }
  std::size_t size() const { return insertions_.size(); }
  int psi_total() const;

  auto operator<=>(const CorrelatorKey&) const = default;
  bool operator==(const CorrelatorKey&) const = default;

 private:
  NovikovDegree beta_;
  std::vector<Insertion> insertions_;
};

std::string to_string(const CorrelatorKey& key);

/// dim X - 3 + c1(beta) + n.
int vdim(const TargetSpace& t, const NovikovDegree& beta, int n);
/// beta != 0 or n >= 3.
bool is_stable(const NovikovDegree& beta, int n);

/// Reduction rules, in the order the engine tries them.
enum class Rule {
  dimension,          ///< (1) degree mismatch gives zero
  classical,          ///< (2) beta = 0: product formula on M_{0,n} x X
  string_equation,    ///< (3) unit insertion without psi
  divisor_equation,   ///< (4) degree-one insertion without psi
  topological_recursion,  ///< (5) genus-zero TRR on the first psi-carrying insertion
  primary,            ///< (6) target backend for primary invariants
  few_points          ///< (7) beta != 0 with fewer than three insertions
};

std::string to_string(Rule rule);

/// Exact genus-zero descendant invariants of a built-in target.
///
/// Values are memoized by canonical key. The cache is guarded by a mutex and
/// entries are inserted only once fully computed, so concurrent callers may
/// duplicate work but never observe a partial value.
class Engine {
 public:
  explicit Engine(TargetPtr target);

  const TargetSpace& target() const { return *target_; }
  const TargetPtr& target_ptr() const { return target_; }

  /// Throws StabilityError for unstable keys and CapabilityError when the
  /// target has no backend for a beta != 0 value.
  Rational correlator(const CorrelatorKey& key);
  Rational correlator(const NovikovDegree& beta, std::vector<Insertion> insertions) {
    return correlator(CorrelatorKey(beta, std::move(insertions)));
  }

  /// Which rule correlator() applies first.
  Rule selected_rule(const CorrelatorKey& key) const;

  /// Applies the given rule at the top level, then evaluates subterms
  /// normally. Throws ContractError if the rule does not apply to the key.
  Rational evaluate_with(const CorrelatorKey& key, Rule rule);

  /// TRR splitting psi off insertion `carrier` against insertions `left` and
  /// `right` (indices into key.insertions(), pairwise distinct).
  Rational topological_recursion(const CorrelatorKey& key, std::size_t carrier, std::size_t left, std::size_t right);

  /// Sum_l <fixed..., gamma psi^l>_{0,n+1,beta} * sign^{l+1} at z^{-1-l}: the
  /// expansion of an insertion gamma / (sign z - psi). Only finitely many l
  /// survive the dimension filter.
  std::map<int, Rational> kernel_correlator(const NovikovDegree& beta, const std::vector<Insertion>& fixed,
                                            const CohVector& gamma, int sign);

  std::size_t cache_size() const;

 private:
  Rational compute(const CorrelatorKey& key);
  Rational apply(const CorrelatorKey& key, Rule rule);

  bool passes_dimension(const CorrelatorKey& key) const;
  Rational classical(const CorrelatorKey& key) const;
  Rational string_equation(const CorrelatorKey& key, std::size_t unit_slot);
  Rational divisor_equation(const CorrelatorKey& key, std::size_t divisor_slot);
  Rational primary_backend(const CorrelatorKey& key);
  Rational few_points(const CorrelatorKey& key);
  Rational degree_one_primary(const CorrelatorKey& key);
  Rational projective_plane_primary(int degree);

  std::size_t divisor_class_for(const NovikovDegree& beta) const;

  TargetPtr target_;
  mutable std::mutex mutex_;
  std::map<CorrelatorKey, Rational> cache_;
};

}  // namespace gwcone

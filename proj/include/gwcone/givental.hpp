#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gwcone/correlator.hpp"
#include "gwcone/report.hpp"
#include "gwcone/series.hpp"

namespace gwcone {

/// t(z) = sum_k t_k z^k. Inside every generating sum t carries one power of eps.
struct TPolynomial {
  std::vector<CohVector> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const;

  static TPolynomial zero(const TargetSpace& t, int degree);
  /// Coefficients n/d with n in [-9, 9], d in [1, 9], drawn from mt19937_64(seed).
  static TPolynomial random(const TargetSpace& t, int degree, std::uint64_t seed);
  /// k-major list of (degree + 1) * basis size rationals.
  static TPolynomial from_values(const TargetSpace& t, int degree, const std::vector<Rational>& values);
};

nlohmann::json to_json(const TPolynomial& t);

/// Smallest z-window every construction here fits at Novikov bound D, eps bound E and deg t = T.
/// A kernel 1/(+-z - psi) at (beta, n) reaches z^{-1-l} with l <= vdim; compositions of two kernels
/// (S applied to the cone, S S*, localisation products) lose one dim X to the paired classes.
Truncation auto_truncation(const TargetSpace& target, int D, int E, int T);

/// q(z) = t(z) - z 1: the -z 1 term at eps^0, the t terms at eps^1.
GiventalSeries dilaton_shift(const TPolynomial& t, TargetPtr target, const Truncation& trunc);
/// Inverse of dilaton_shift; throws ContractError if q is not of that shape.
TPolynomial dilaton_unshift(const GiventalSeries& q);

struct EndoKey {
  int z = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  NovikovDegree beta;
  int eps = 0;

  Grade grade() const { return {beta, eps}; }
  auto operator<=>(const EndoKey&) const = default;
  bool operator==(const EndoKey&) const = default;
};

/// End(H*(X))-valued truncated series: entry (row, col) is the phi_row coordinate of the
/// image of phi_col.
class EndoSeries {
 public:
  EndoSeries(TargetPtr target, Truncation trunc);

  static EndoSeries identity(TargetPtr target, Truncation trunc);
  /// Column `col` is the series `image` written in the phi basis.
  void set_column(std::size_t col, const GiventalSeries& image);
  GiventalSeries column(std::size_t col) const;

  const TargetPtr& target() const { return target_; }
  const Truncation& trunc() const { return trunc_; }
  const std::map<EndoKey, Rational>& terms() const { return terms_; }
  void add_term(const EndoKey& key, const Rational& c);
  Rational coefficient(const EndoKey& key) const;

  bool operator==(const EndoSeries& o) const { return terms_ == o.terms_; }

 private:
  TargetPtr target_;
  Truncation trunc_;
  std::map<EndoKey, Rational> terms_;
};

/// Matrix product with grades and z-exponents adding; z -> -z on b when flip_second.
EndoSeries compose(const EndoSeries& a, const EndoSeries& b, bool flip_second);

/// The constructions attached to one fixed t(z) at one truncation. Bracket values are memoized
/// per instance on top of the engine's correlator cache; an instance is not meant to be shared
/// across threads.
class Givental {
 public:
  Givental(std::shared_ptr<Engine> engine, TPolynomial t, Truncation trunc);

  const TargetSpace& target() const { return engine_->target(); }
  const TargetPtr& target_ptr() const { return engine_->target_ptr(); }
  const Truncation& trunc() const { return trunc_; }
  const TPolynomial& t() const { return t_; }
  Engine& engine() { return *engine_; }

  /// (1/n!) <fixed..., t(psi), ..., t(psi)>_{0,|fixed|+n,beta}, with n copies of t expanded multilinearly.
  Rational bracket(const NovikovDegree& beta, int n, const std::vector<Insertion>& fixed);
  /// The same with one more insertion phi_free / (sign z - psi): z-exponent -1-l -> value.
  std::map<int, Rational> kernel_bracket(const NovikovDegree& beta, int n, const std::vector<Insertion>& fixed,
                                         std::size_t free_class, int sign);

  GiventalSeries dilaton_shift() const;
  /// sum over stable (beta, n) of Q^beta eps^n (1/n!) <t, ..., t>; n = 0 is omitted for beta != 0.
  ScalarSeries descendant_potential();
  /// q(z) + sum over stable (beta, n+1) of Q^beta eps^n (1/n!) <t, ..., t, phi_g / (-z - psi)> phi^g.
  GiventalSeries cone_point();
  /// f + sum over stable (beta, n+2) of Q^beta eps^n (1/n!) <f / (z - psi), t, ..., t, phi_g> phi^g,
  /// with f expanded linearly in its z^j phi_a terms (z^j stays outside the bracket).
  GiventalSeries s_apply(const GiventalSeries& f);
  EndoSeries s_matrix();
  /// Column a: phi_a + sum <phi_a, t, ..., t, phi_b / (z - psi)> phi^b.
  EndoSeries s_adjoint_matrix();
  /// r + sum <r(psi), t, ..., t, phi_g / (sign z - psi)> phi^g: r is inserted with z -> psi.
  GiventalSeries s_adjoint_corr_apply(const GiventalSeries& r, int sign);
  /// d f / d q_k^alpha = phi_alpha z^k + sum <phi_alpha psi^k, t, ..., t, phi_g / (-z - psi)> phi^g.
  GiventalSeries tangent_vector(std::size_t alpha, int k);

  /// <<fixed>>_{0,r}(t) = sum over stable (beta, r+n) of Q^beta eps^n (1/n!) <fixed, t, ..., t>.
  ScalarSeries double_bracket(const std::vector<Insertion>& fixed);
  /// The k-th universal relation paired against phi_alpha; identically zero on the cone.
  ScalarSeries universal_relation(int k, std::size_t alpha);

  CheckResult check_polynomiality();
  CheckResult check_inverse();
  CheckResult check_adjoint_transpose();
  CheckResult check_universal_relations(int k_max);
  /// Omega of the two tangent vectors obtained from r and u (both z-polynomials).
  CheckResult check_lagrangian(const GiventalSeries& r, const GiventalSeries& u);
  /// check_lagrangian over all pairs (phi_a z^j, phi_b z^i) with i, j <= max_power.
  CheckResult check_lagrangian_basis(int max_power);
  /// S(z) f in z H+, and every tangent vector d f / d q_k^alpha (k <= deg t) in the span of
  /// z^j S*(-z) phi_b by exact elimination (empirical check).
  std::vector<CheckResult> check_cone_in_tangent();

  /// Stable (beta, n) with beta within the Novikov bound and n <= E, where stability is
  /// tested for n + extra points.
  std::vector<std::pair<NovikovDegree, int>> stable_range(int extra) const;

 private:
  struct Monomial {
    int k;
    std::size_t alpha;
    Rational coeff;
  };
  struct BracketKey {
    NovikovDegree beta;
    int n;
    std::vector<Insertion> fixed;
    long free_class;
    auto operator<=>(const BracketKey&) const = default;
  };

  /// l -> (1/n!) <fixed, t..., phi_free psi^l>, or {0 -> bracket} when free_class < 0.
  const std::map<int, Rational>& raw_bracket(const BracketKey& key);

  std::shared_ptr<Engine> engine_;
  TPolynomial t_;
  Truncation trunc_;
  std::vector<Monomial> monomials_;
  std::map<BracketKey, std::map<int, Rational>> brackets_;
};

}  // namespace gwcone

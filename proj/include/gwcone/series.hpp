#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gwcone/rational.hpp"
#include "gwcone/target.hpp"

namespace gwcone {

/// Retained grades: Novikov total degree <= novikov_order, epsilon order <= epsilon_order,
/// z-exponents in [z_min, z_max]. Grades beyond the first two bounds are dropped (an exact
/// quotient, since every product is graded); z-exponents outside the window are an error.
struct Truncation {
  int novikov_order = 0;
  int epsilon_order = 0;
  int z_min = -1;
  int z_max = 1;

  void validate() const;
  bool admits(const NovikovDegree& beta, int eps) const {
    return beta.total() <= novikov_order && eps >= 0 && eps <= epsilon_order;
  }
  bool in_window(int z) const { return z >= z_min && z <= z_max; }
  void check_window(int z) const;

  bool operator==(const Truncation&) const = default;
};

/// Bookkeeping grade Q^beta eps^eps.
struct Grade {
  NovikovDegree beta;
  int eps = 0;

  Grade& operator+=(const Grade& o) {
    beta += o.beta;
    eps += o.eps;
    return *this;
  }
  friend Grade operator+(Grade a, const Grade& b) { return a += b; }
  auto operator<=>(const Grade&) const = default;
  bool operator==(const Grade&) const = default;
};

std::string to_string(const Grade& g);

/// Sparse series in (z, Q, eps) with rational coefficients. Pairings and residues land here.
class ScalarSeries {
 public:
  using Key = std::pair<int, Grade>;

  void add_term(int z, const Grade& g, const Rational& c);
  Rational coefficient(int z, const Grade& g) const;
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ScalarSeries& operator+=(const ScalarSeries& o);
  ScalarSeries& operator-=(const ScalarSeries& o);
  ScalarSeries& operator*=(const Rational& s);
  /// Product truncated to the grades admitted by trunc (the z-window is not consulted).
  ScalarSeries multiply(const ScalarSeries& o, const Truncation& trunc) const;
  /// Multiplies every grade by Q^shift.beta eps^shift.eps, dropping inadmissible results.
  ScalarSeries shifted(const Grade& shift, const Truncation& trunc) const;

  bool operator==(const ScalarSeries&) const = default;

 private:
  std::map<Key, Rational> terms_;
};

struct SeriesKey {
  int z = 0;
  std::size_t basis = 0;
  NovikovDegree beta;
  int eps = 0;

  Grade grade() const { return {beta, eps}; }
  auto operator<=>(const SeriesKey&) const = default;
  bool operator==(const SeriesKey&) const = default;
};

/// Truncated element of H*(X)((z^{-1})) tensored with the Novikov and eps gradings.
/// Zero coefficients are never stored, so equality is key-set plus coefficient equality.
class GiventalSeries {
 public:
  GiventalSeries(TargetPtr target, Truncation trunc);

  const TargetPtr& target() const { return target_; }
  const Truncation& trunc() const { return trunc_; }
  const std::map<SeriesKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c * phi_basis z^z Q^beta eps^eps. Inadmissible grades are dropped;
  /// z outside the window throws WindowOverflow.
  void add_term(int z, std::size_t basis, const NovikovDegree& beta, int eps, const Rational& c);
  void add_term(const SeriesKey& key, const Rational& c) { add_term(key.z, key.basis, key.beta, key.eps, c); }
  /// Adds scale * v z^z at the given grade.
  void add_vector(int z, const CohVector& v, const Grade& g, const Rational& scale = 1);
  Rational coefficient(const SeriesKey& key) const;

  GiventalSeries& operator+=(const GiventalSeries& o);
  GiventalSeries& operator-=(const GiventalSeries& o);
  GiventalSeries& operator*=(const Rational& s);
  friend GiventalSeries operator+(GiventalSeries a, const GiventalSeries& b) { return a += b; }
  friend GiventalSeries operator-(GiventalSeries a, const GiventalSeries& b) { return a -= b; }
  friend GiventalSeries operator*(const Rational& s, GiventalSeries a) { return a *= s; }

  /// Coefficientwise equality; the two series must share target and truncation.
  bool operator==(const GiventalSeries& o) const;

  /// Only the terms of a single (beta, eps) grade.
  GiventalSeries grade_part(const Grade& g) const;
  /// z -> -z.
  GiventalSeries flipped() const;

 private:
  void require_compatible(const GiventalSeries& o) const;

  TargetPtr target_;
  Truncation trunc_;
  std::map<SeriesKey, Rational> terms_;
};

GiventalSeries add(const GiventalSeries& f, const GiventalSeries& g);

/// (f, g) extended linearly over z, Q and eps. Result exponents must fit the window.
ScalarSeries pair_extend(const GiventalSeries& f, const GiventalSeries& g);

/// Omega(f, g) = Res_{z=0} (f(-z), g(z)) dz, one coefficient per (beta, eps) grade (stored at z = 0).
ScalarSeries omega(const GiventalSeries& f, const GiventalSeries& g);

/// (H+ part, H- part): z-exponents >= 0 and < 0 respectively.
std::pair<GiventalSeries, GiventalSeries> split_plus_minus(const GiventalSeries& f);

enum class PolynomialMode {
  h_plus,   ///< no negative z-exponents
  z_h_plus  ///< no non-positive z-exponents
};

struct PolynomialVerdict {
  bool holds = true;
  std::vector<SeriesKey> offending;
};

PolynomialVerdict is_z_polynomial(const GiventalSeries& f, PolynomialMode mode);

/// Records {z_exp, basis, novikov, eps, num, den} in canonical key order.
/// num/den are decimal strings so arbitrarily large values round-trip exactly.
nlohmann::json series_to_json(const GiventalSeries& f);
GiventalSeries series_from_json(const nlohmann::json& records, TargetPtr target, Truncation trunc);
std::string serialize(const GiventalSeries& f);

nlohmann::json scalar_to_json(const ScalarSeries& s);

}  // namespace gwcone

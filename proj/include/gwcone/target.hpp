#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwcone/rational.hpp"

namespace gwcone {

/// Effective curve class, written in the generators of the effective cone.
/// Empty for the point; one component for projective spaces.
struct NovikovDegree {
  std::vector<int> degrees;

  int total() const;
  bool is_zero() const;
  std::size_t rank() const { return degrees.size(); }

  NovikovDegree& operator+=(const NovikovDegree& other);
  friend NovikovDegree operator+(NovikovDegree a, const NovikovDegree& b) { return a += b; }
  /// Componentwise difference; throws ContractError if the result is not effective.
  friend NovikovDegree operator-(const NovikovDegree& a, const NovikovDegree& b);
  /// Componentwise a <= b.
  bool divides(const NovikovDegree& b) const;

  auto operator<=>(const NovikovDegree&) const = default;
  bool operator==(const NovikovDegree&) const = default;

  static NovikovDegree zero(std::size_t rank) { return {std::vector<int>(rank, 0)}; }
};

std::string to_string(const NovikovDegree& beta);

/// Element of H*(X) in the chosen basis.
class CohVector {
 public:
  CohVector() = default;
  explicit CohVector(std::size_t size) : coords_(size) {}
  explicit CohVector(std::vector<Rational> coords) : coords_(std::move(coords)) {}

  static CohVector basis(std::size_t size, std::size_t index);

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;

  CohVector& operator+=(const CohVector& other);
  CohVector& operator-=(const CohVector& other);
  CohVector& operator*=(const Rational& scalar);
  friend CohVector operator+(CohVector a, const CohVector& b) { return a += b; }
  friend CohVector operator-(CohVector a, const CohVector& b) { return a -= b; }
  friend CohVector operator*(const Rational& s, CohVector a) { return a *= s; }
  bool operator==(const CohVector&) const = default;

 private:
  std::vector<Rational> coords_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Finite presentation of the even cohomology ring of a target.
///
/// Basis element 0 is the unit. Everything is immutable after construction
/// and safe to share between threads.
class TargetSpace {
 public:
  struct Data {
    std::string name;
    int dim = 0;
    std::vector<int> basis_degrees;
    RationalMatrix pairing;
    /// cup[a][b][c]: coefficient of phi_c in phi_a * phi_b.
    std::vector<RationalMatrix> cup;
    std::size_t class_rank = 0;
    /// c1(beta) = sum_i c1[i] * beta_i.
    std::vector<int> c1;
    /// divisor[a][i]: (phi_a . beta) = sum_i divisor[a][i] * beta_i for degree-1 classes; empty rows otherwise.
    std::vector<std::vector<int>> divisor;
    bool builtin = false;
  };

  /// Validates every ring invariant; throws ConfigError on the first violation.
  explicit TargetSpace(Data data);

  const std::string& name() const { return d_.name; }
  int dim() const { return d_.dim; }
  std::size_t size() const { return d_.basis_degrees.size(); }
  int degree(std::size_t alpha) const { return d_.basis_degrees[alpha]; }
  const std::vector<int>& basis_degrees() const { return d_.basis_degrees; }
  const RationalMatrix& pairing() const { return d_.pairing; }
  /// Inverse pairing g^{ab}: phi^a = sum_b g^{ab} phi_b.
  const RationalMatrix& inverse_pairing() const { return inverse_; }
  const Rational& cup_coefficient(std::size_t a, std::size_t b, std::size_t c) const { return d_.cup[a][b][c]; }
  std::size_t class_rank() const { return d_.class_rank; }
  bool builtin() const { return d_.builtin; }

  int c1_pairing(const NovikovDegree& beta) const;
  bool is_divisor(std::size_t alpha) const { return d_.basis_degrees[alpha] == 1; }
  /// (phi_alpha . beta) for a degree-1 basis class.
  int divisor_pairing(std::size_t alpha, const NovikovDegree& beta) const;

  CohVector unit() const { return CohVector::basis(size(), 0); }
  CohVector basis_vector(std::size_t alpha) const { return CohVector::basis(size(), alpha); }
  /// phi^alpha expressed in the phi basis.
  CohVector dual_vector(std::size_t alpha) const;

  /// Integral over X of phi_{a_1} ... phi_{a_n}.
  Rational integrate_product(const std::vector<std::size_t>& classes) const;

  /// All effective classes with total degree <= max_total, in increasing order.
  std::vector<NovikovDegree> effective_classes(int max_total) const;
  NovikovDegree zero_class() const { return NovikovDegree::zero(d_.class_rank); }

  const Data& data() const { return d_; }

 private:
  void validate() const;

  Data d_;
  RationalMatrix inverse_;
};

using TargetPtr = std::shared_ptr<const TargetSpace>;

/// Built-in presentations: "point", "P1", "P2" (basis = powers of the hyperplane class).
TargetPtr make_target(const std::string& name);

/// Custom presentation from structured text; validated only.
TargetPtr target_from_json(const nlohmann::json& j);

CohVector cup_product(const TargetSpace& t, const CohVector& a, const CohVector& b);
Rational poincare_pair(const TargetSpace& t, const CohVector& a, const CohVector& b);

/// Exact inverse of a square rational matrix; throws ContractError if singular.
RationalMatrix invert(const RationalMatrix& m);

}  // namespace gwcone

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "equisym/random.hpp"

namespace equisym {

/// Tolerance for element equality in continuous groups.
inline constexpr double kNumericTolerance = 1e-9;
/// Tolerance on ||Q^T Q - I||_inf accepted for orthogonal payloads.
inline constexpr double kOrthogonalityTolerance = 1e-8;

/// A group element.  The payload kind is fixed by the group that produced it.
class GroupElement {
 public:
  enum class Kind { index, permutation, matrix, translation, euclidean, pair };

  static GroupElement from_index(std::size_t i);
  static GroupElement from_permutation(std::vector<int> p);
  static GroupElement from_matrix(Eigen::MatrixXd q);
  static GroupElement from_translation(Eigen::VectorXd t);
  static GroupElement from_euclidean(Eigen::MatrixXd q, Eigen::VectorXd t);
  static GroupElement from_pair(GroupElement a, GroupElement b);

  Kind kind() const { return kind_; }
  std::size_t index() const { return index_; }
  const std::vector<int>& permutation() const { return perm_; }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  const Eigen::VectorXd& translation() const { return vec_; }
  const GroupElement& first() const { return parts_.at(0); }
  const GroupElement& second() const { return parts_.at(1); }

  /// Infinity-norm distance between payloads; kind mismatch is infinite,
  /// discrete payloads are 0 or 1.
  double distance(const GroupElement& other) const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::index;
  std::size_t index_ = 0;
  std::vector<int> perm_;
  Eigen::MatrixXd mat_;
  Eigen::VectorXd vec_;
  std::vector<GroupElement> parts_;
};

enum class GroupKind {
  cyclic,
  symmetric,
  dihedral,
  orthogonal,
  special_orthogonal,
  translation,
  euclidean,
  product
};

/// Group descriptor.  Finite kinds enumerate their elements in a fixed order,
/// so an element's position in `elements()` is its index.
class Group {
 public:
  /// The trivial group.
  Group() : kind_(GroupKind::cyclic), param_(1) {}

  static Group cyclic(int n);
  static Group symmetric(int n);
  /// Dihedral group of the regular n-gon, order 2n.  Element a + n*b is r^a s^b.
  static Group dihedral(int n);
  static Group orthogonal(int d);
  static Group special_orthogonal(int d);
  static Group translation(int d);
  /// E(d): pairs (Q, t) acting by x -> Qx + t.
  static Group euclidean(int d);
  static Group product(Group a, Group b);
  static Group trivial() { return cyclic(1); }

  GroupKind kind() const { return kind_; }
  int parameter() const { return param_; }
  const Group& left() const { return factors_.at(0); }
  const Group& right() const { return factors_.at(1); }

  bool finite() const;
  /// Finite or compact: admits a Haar probability measure.
  bool compact() const;
  /// Number of elements; empty for infinite groups.
  std::optional<std::size_t> order() const;

  GroupElement identity() const;
  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;

  /// Throws StructuralError / InvariantViolation if `a` is not an element of this group.
  void validate(const GroupElement& a) const;
  bool contains(const GroupElement& a) const;
  bool equal(const GroupElement& a, const GroupElement& b,
             double tol = kNumericTolerance) const;

  std::vector<GroupElement> elements() const;
  GroupElement element(std::size_t index) const;
  std::size_t index_of(const GroupElement& a) const;

  /// Haar-distributed element; throws UnsupportedError on noncompact groups.
  GroupElement haar_sample(RandomSource& rng) const;
  /// Test-point sampler for any group: Haar when compact, Gaussian translations otherwise.
  GroupElement sample(RandomSource& rng, double translation_scale = 2.0) const;

  std::string name() const;
  nlohmann::json to_json() const;
  static Group from_json(const nlohmann::json& j);

  bool operator==(const Group& other) const;
  bool operator!=(const Group& other) const { return !(*this == other); }

 private:
  Group(GroupKind kind, int param) : kind_(kind), param_(param) {}

  GroupKind kind_;
  int param_ = 0;
  std::vector<Group> factors_;
};

/// Uniform rotation of R^3 from a unit quaternion.
Eigen::Matrix3d random_rotation3(RandomSource& rng);
/// Haar-orthogonal matrix: QR of a Gaussian matrix with R's diagonal made positive.
Eigen::MatrixXd random_orthogonal(int d, RandomSource& rng);

enum class HomomorphismKind { subgroup_inclusion, left_factor_injection, composite, custom };

/// Group homomorphism phi: source -> target.
struct Homomorphism {
  Group source;
  Group target;
  std::function<GroupElement(const GroupElement&)> apply;
  HomomorphismKind kind = HomomorphismKind::custom;
  bool injective = false;
  std::string name;

  GroupElement operator()(const GroupElement& h) const { return apply(h); }
};

Homomorphism identity_hom(const Group& g);
/// Every element to the identity of `target`.
Homomorphism trivial_hom(const Group& source, const Group& target);
/// h -> (e_K, h) into K x H.
Homomorphism hom_inject_left(const Group& k, const Group& h);
/// Componentwise product phi1 x phi2.
Homomorphism product_hom(const Homomorphism& a, const Homomorphism& b);
/// outer o inner.
Homomorphism compose_hom(const Homomorphism& outer, const Homomorphism& inner);
/// The standard embedding of `sub` in `group` (S_m in S_n on the first m points,
/// C_m in C_n as multiples of n/m, C_n as rotations of D_n, O(d) and T(d) in E(d),
/// SO(d) in O(d), the trivial group anywhere, a group in itself).
Homomorphism standard_inclusion(const Group& sub, const Group& group);

/// Largest law violation d(phi(ab), phi(a)phi(b)) plus identity check.  Exhaustive over
/// pairs when the source is finite and has at most `exhaustive_limit` elements,
/// otherwise over `samples` random pairs.
double homomorphism_violation(const Homomorphism& phi, RandomSource& rng, int samples = 100,
                              std::size_t exhaustive_limit = 200);

}  // namespace equisym

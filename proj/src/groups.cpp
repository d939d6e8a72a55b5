#include "equisym/groups.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "equisym/errors.hpp"

namespace equisym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t mod(long long a, long long n) { return static_cast<std::size_t>(((a % n) + n) % n); }

std::vector<int> unrank_permutation(std::size_t rank, int n) {
  // Lexicographic order: rank 0 is the identity.
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(n);
  for (int i = n; i >= 1; --i) {
    std::size_t f = factorial(i - 1);
    std::size_t q = rank / f;
    rank %= f;
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<long>(q));
  }
  return out;
}

std::size_t rank_permutation(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::size_t rank = 0;
  for (int i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

double orthogonality_defect(const Eigen::MatrixXd& q) {
  const Eigen::MatrixXd e = q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols());
  return e.cwiseAbs().maxCoeff();
}

void require_kind(const GroupElement& a, GroupElement::Kind kind, const Group& g) {
  if (a.kind() != kind)
    throw StructuralError("element " + a.to_string() + " has the wrong payload kind for " +
                          g.name());
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::from_index(std::size_t i) {
  GroupElement e;
  e.kind_ = Kind::index;
  e.index_ = i;
  return e;
}

GroupElement GroupElement::from_permutation(std::vector<int> p) {
  GroupElement e;
  e.kind_ = Kind::permutation;
  e.perm_ = std::move(p);
  return e;
}

GroupElement GroupElement::from_matrix(Eigen::MatrixXd q) {
  GroupElement e;
  e.kind_ = Kind::matrix;
  e.mat_ = std::move(q);
  return e;
}

GroupElement GroupElement::from_translation(Eigen::VectorXd t) {
  GroupElement e;
  e.kind_ = Kind::translation;
  e.vec_ = std::move(t);
  return e;
}

GroupElement GroupElement::from_euclidean(Eigen::MatrixXd q, Eigen::VectorXd t) {
  GroupElement e;
  e.kind_ = Kind::euclidean;
  e.mat_ = std::move(q);
  e.vec_ = std::move(t);
  return e;
}

GroupElement GroupElement::from_pair(GroupElement a, GroupElement b) {
  GroupElement e;
  e.kind_ = Kind::pair;
  e.parts_.push_back(std::move(a));
  e.parts_.push_back(std::move(b));
  return e;
}

double GroupElement::distance(const GroupElement& other) const {
  if (kind_ != other.kind_) return kInf;
  switch (kind_) {
    case Kind::index:
      return index_ == other.index_ ? 0.0 : 1.0;
    case Kind::permutation:
      return perm_ == other.perm_ ? 0.0 : 1.0;
    case Kind::matrix:
      if (mat_.rows() != other.mat_.rows() || mat_.cols() != other.mat_.cols()) return kInf;
      return mat_.size() == 0 ? 0.0 : (mat_ - other.mat_).cwiseAbs().maxCoeff();
    case Kind::translation:
      if (vec_.size() != other.vec_.size()) return kInf;
      return vec_.size() == 0 ? 0.0 : (vec_ - other.vec_).cwiseAbs().maxCoeff();
    case Kind::euclidean: {
      if (vec_.size() != other.vec_.size() || mat_.rows() != other.mat_.rows()) return kInf;
      if (vec_.size() == 0) return 0.0;
      return std::max((mat_ - other.mat_).cwiseAbs().maxCoeff(),
                      (vec_ - other.vec_).cwiseAbs().maxCoeff());
    }
    case Kind::pair:
      return std::max(parts_[0].distance(other.parts_[0]), parts_[1].distance(other.parts_[1]));
  }
  return kInf;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os.precision(6);
  switch (kind_) {
    case Kind::index:
      os << index_;
      break;
    case Kind::permutation:
      os << "[";
      for (std::size_t i = 0; i < perm_.size(); ++i) os << (i ? " " : "") << perm_[i];
      os << "]";
      break;
    case Kind::matrix:
      os << "Q[";
      for (Eigen::Index i = 0; i < mat_.rows(); ++i)
        for (Eigen::Index j = 0; j < mat_.cols(); ++j)
          os << (i || j ? " " : "") << mat_(i, j);
      os << "]";
      break;
    case Kind::translation:
      os << "t(";
      for (Eigen::Index i = 0; i < vec_.size(); ++i) os << (i ? " " : "") << vec_(i);
      os << ")";
      break;
    case Kind::euclidean:
      os << "(" << GroupElement::from_matrix(mat_).to_string() << ", "
         << GroupElement::from_translation(vec_).to_string() << ")";
      break;
    case Kind::pair:
      os << "(" << parts_[0].to_string() << ", " << parts_[1].to_string() << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Group construction

Group Group::cyclic(int n) {
  if (n < 1) throw InvalidArgument("cyclic group needs n >= 1");
  return Group(GroupKind::cyclic, n);
}

Group Group::symmetric(int n) {
  if (n < 1 || n > 12) throw InvalidArgument("symmetric group supported for 1 <= n <= 12");
  return Group(GroupKind::symmetric, n);
}

Group Group::dihedral(int n) {
  if (n < 1) throw InvalidArgument("dihedral group needs n >= 1");
  return Group(GroupKind::dihedral, n);
}

Group Group::orthogonal(int d) {
  if (d < 0) throw InvalidArgument("negative dimension");
  return Group(GroupKind::orthogonal, d);
}

Group Group::special_orthogonal(int d) {
  if (d < 0) throw InvalidArgument("negative dimension");
  return Group(GroupKind::special_orthogonal, d);
}

Group Group::translation(int d) {
  if (d < 0) throw InvalidArgument("negative dimension");
  return Group(GroupKind::translation, d);
}

Group Group::euclidean(int d) {
  if (d < 0) throw InvalidArgument("negative dimension");
  return Group(GroupKind::euclidean, d);
}

Group Group::product(Group a, Group b) {
  Group g(GroupKind::product, 0);
  g.factors_.push_back(std::move(a));
  g.factors_.push_back(std::move(b));
  return g;
}

bool Group::finite() const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::symmetric:
    case GroupKind::dihedral:
      return true;
    case GroupKind::product:
      return left().finite() && right().finite();
    default:
      // The zero-dimensional continuous groups are trivial but we still treat them
      // as continuous descriptors.
      return false;
  }
}

bool Group::compact() const {
  switch (kind_) {
    case GroupKind::translation:
    case GroupKind::euclidean:
      return param_ == 0;
    case GroupKind::product:
      return left().compact() && right().compact();
    default:
      return true;
  }
}

std::optional<std::size_t> Group::order() const {
  switch (kind_) {
    case GroupKind::cyclic:
      return static_cast<std::size_t>(param_);
    case GroupKind::symmetric:
      return factorial(param_);
    case GroupKind::dihedral:
      return static_cast<std::size_t>(2 * param_);
    case GroupKind::product: {
      auto a = left().order();
      auto b = right().order();
      if (a && b) return *a * *b;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Arithmetic

GroupElement Group::identity() const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::dihedral:
      return GroupElement::from_index(0);
    case GroupKind::symmetric: {
      std::vector<int> p(param_);
      std::iota(p.begin(), p.end(), 0);
      return GroupElement::from_permutation(std::move(p));
    }
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return GroupElement::from_matrix(Eigen::MatrixXd::Identity(param_, param_));
    case GroupKind::translation:
      return GroupElement::from_translation(Eigen::VectorXd::Zero(param_));
    case GroupKind::euclidean:
      return GroupElement::from_euclidean(Eigen::MatrixXd::Identity(param_, param_),
                                          Eigen::VectorXd::Zero(param_));
    case GroupKind::product:
      return GroupElement::from_pair(left().identity(), right().identity());
  }
  throw StructuralError("unknown group kind");
}

void Group::validate(const GroupElement& a) const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::dihedral:
      require_kind(a, GroupElement::Kind::index, *this);
      if (a.index() >= *order())
        throw StructuralError("index " + a.to_string() + " out of range for " + name());
      return;
    case GroupKind::symmetric: {
      require_kind(a, GroupElement::Kind::permutation, *this);
      const auto& p = a.permutation();
      if (static_cast<int>(p.size()) != param_)
        throw StructuralError("permutation of the wrong length for " + name());
      std::vector<bool> seen(param_, false);
      for (int v : p) {
        if (v < 0 || v >= param_ || seen[v])
          throw InvariantViolation("permutation " + a.to_string() + " is not a bijection");
        seen[v] = true;
      }
      return;
    }
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal: {
      require_kind(a, GroupElement::Kind::matrix, *this);
      const auto& q = a.matrix();
      if (q.rows() != param_ || q.cols() != param_)
        throw StructuralError("matrix of the wrong size for " + name());
      if (param_ > 0 && orthogonality_defect(q) > kOrthogonalityTolerance)
        throw InvariantViolation("matrix is not orthogonal");
      if (kind_ == GroupKind::special_orthogonal && param_ > 0 && q.determinant() < 0)
        throw InvariantViolation("matrix has determinant -1 in " + name());
      return;
    }
    case GroupKind::translation:
      require_kind(a, GroupElement::Kind::translation, *this);
      if (a.translation().size() != param_)
        throw StructuralError("translation of the wrong dimension for " + name());
      if (!a.translation().allFinite()) throw InvariantViolation("non-finite translation");
      return;
    case GroupKind::euclidean:
      require_kind(a, GroupElement::Kind::euclidean, *this);
      if (a.matrix().rows() != param_ || a.matrix().cols() != param_ ||
          a.translation().size() != param_)
        throw StructuralError("euclidean element of the wrong dimension for " + name());
      if (param_ > 0 && orthogonality_defect(a.matrix()) > kOrthogonalityTolerance)
        throw InvariantViolation("linear part is not orthogonal");
      return;
    case GroupKind::product:
      require_kind(a, GroupElement::Kind::pair, *this);
      left().validate(a.first());
      right().validate(a.second());
      return;
  }
}

bool Group::contains(const GroupElement& a) const {
  try {
    validate(a);
    return true;
  } catch (const Error&) {
    return false;
  }
}

GroupElement Group::compose(const GroupElement& a, const GroupElement& b) const {
  validate(a);
  validate(b);
  switch (kind_) {
    case GroupKind::cyclic:
      return GroupElement::from_index((a.index() + b.index()) % param_);
    case GroupKind::dihedral: {
      const long long n = param_;
      const long long a1 = static_cast<long long>(a.index()) % n;
      const long long b1 = static_cast<long long>(a.index()) / n;
      const long long a2 = static_cast<long long>(b.index()) % n;
      const long long b2 = static_cast<long long>(b.index()) / n;
      const std::size_t rot = mod(b1 ? a1 - a2 : a1 + a2, n);
      const std::size_t refl = static_cast<std::size_t>((b1 + b2) % 2);
      return GroupElement::from_index(rot + static_cast<std::size_t>(n) * refl);
    }
    case GroupKind::symmetric: {
      // (a.b)(i) = a(b(i))
      std::vector<int> p(param_);
      for (int i = 0; i < param_; ++i) p[i] = a.permutation()[b.permutation()[i]];
      return GroupElement::from_permutation(std::move(p));
    }
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return GroupElement::from_matrix(a.matrix() * b.matrix());
    case GroupKind::translation:
      return GroupElement::from_translation(a.translation() + b.translation());
    case GroupKind::euclidean:
      // (Q1, t1)(Q2, t2) = (Q1 Q2, Q1 t2 + t1)
      return GroupElement::from_euclidean(a.matrix() * b.matrix(),
                                          a.matrix() * b.translation() + a.translation());
    case GroupKind::product:
      return GroupElement::from_pair(left().compose(a.first(), b.first()),
                                     right().compose(a.second(), b.second()));
  }
  throw StructuralError("unknown group kind");
}

GroupElement Group::inverse(const GroupElement& a) const {
  validate(a);
  switch (kind_) {
    case GroupKind::cyclic:
      return GroupElement::from_index(mod(-static_cast<long long>(a.index()), param_));
    case GroupKind::dihedral: {
      const std::size_t n = static_cast<std::size_t>(param_);
      if (a.index() >= n) return a;  // reflections are involutions
      return GroupElement::from_index(mod(-static_cast<long long>(a.index()), param_));
    }
    case GroupKind::symmetric: {
      std::vector<int> p(param_);
      for (int i = 0; i < param_; ++i) p[a.permutation()[i]] = i;
      return GroupElement::from_permutation(std::move(p));
    }
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return GroupElement::from_matrix(a.matrix().transpose());
    case GroupKind::translation:
      return GroupElement::from_translation(-a.translation());
    case GroupKind::euclidean: {
      Eigen::MatrixXd qt = a.matrix().transpose();
      Eigen::VectorXd t = -(qt * a.translation());
      return GroupElement::from_euclidean(std::move(qt), std::move(t));
    }
    case GroupKind::product:
      return GroupElement::from_pair(left().inverse(a.first()), right().inverse(a.second()));
  }
  throw StructuralError("unknown group kind");
}

bool Group::equal(const GroupElement& a, const GroupElement& b, double tol) const {
  return a.distance(b) <= (finite() ? 0.0 : tol);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<GroupElement> Group::elements() const {
  const auto n = order();
  if (!n) throw UnsupportedError(name() + " is infinite and cannot be enumerated");
  std::vector<GroupElement> out;
  out.reserve(*n);
  for (std::size_t i = 0; i < *n; ++i) out.push_back(element(i));
  return out;
}

GroupElement Group::element(std::size_t i) const {
  const auto n = order();
  if (!n) throw UnsupportedError(name() + " is infinite and has no element table");
  if (i >= *n) throw StructuralError("element index out of range for " + name());
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::dihedral:
      return GroupElement::from_index(i);
    case GroupKind::symmetric:
      return GroupElement::from_permutation(unrank_permutation(i, param_));
    case GroupKind::product: {
      const std::size_t nb = *right().order();
      return GroupElement::from_pair(left().element(i / nb), right().element(i % nb));
    }
    default:
      break;
  }
  throw UnsupportedError(name() + " has no element table");
}

std::size_t Group::index_of(const GroupElement& a) const {
  validate(a);
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::dihedral:
      return a.index();
    case GroupKind::symmetric:
      return rank_permutation(a.permutation());
    case GroupKind::product:
      if (finite()) return left().index_of(a.first()) * *right().order() + right().index_of(a.second());
      break;
    default:
      break;
  }
  throw UnsupportedError(name() + " has no element table");
}

// ---------------------------------------------------------------------------
// Sampling

Eigen::Matrix3d random_rotation3(RandomSource& rng) {
  Eigen::Vector4d q;
  do {
    for (int i = 0; i < 4; ++i) q(i) = rng.normal();
  } while (q.norm() < 1e-12);
  q.normalize();
  return Eigen::Quaterniond(q(0), q(1), q(2), q(3)).toRotationMatrix();
}

Eigen::MatrixXd random_orthogonal(int d, RandomSource& rng) {
  if (d == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

GroupElement Group::haar_sample(RandomSource& rng) const {
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::dihedral:
    case GroupKind::symmetric:
      return element(rng.index(*order()));
    case GroupKind::orthogonal:
      return GroupElement::from_matrix(random_orthogonal(param_, rng));
    case GroupKind::special_orthogonal: {
      if (param_ == 3) return GroupElement::from_matrix(random_rotation3(rng));
      Eigen::MatrixXd q = random_orthogonal(param_, rng);
      if (param_ > 0 && q.determinant() < 0) q.col(0) *= -1.0;
      return GroupElement::from_matrix(std::move(q));
    }
    case GroupKind::translation:
    case GroupKind::euclidean:
      if (param_ == 0) return identity();
      throw UnsupportedError(name() + " is noncompact: no Haar probability measure");
    case GroupKind::product: {
      GroupElement a = left().haar_sample(rng);
      GroupElement b = right().haar_sample(rng);
      return GroupElement::from_pair(std::move(a), std::move(b));
    }
  }
  throw StructuralError("unknown group kind");
}

GroupElement Group::sample(RandomSource& rng, double translation_scale) const {
  switch (kind_) {
    case GroupKind::translation: {
      Eigen::VectorXd t(param_);
      for (int i = 0; i < param_; ++i) t(i) = translation_scale * rng.normal();
      return GroupElement::from_translation(std::move(t));
    }
    case GroupKind::euclidean: {
      Eigen::MatrixXd q = random_orthogonal(param_, rng);
      Eigen::VectorXd t(param_);
      for (int i = 0; i < param_; ++i) t(i) = translation_scale * rng.normal();
      return GroupElement::from_euclidean(std::move(q), std::move(t));
    }
    case GroupKind::product: {
      GroupElement a = left().sample(rng, translation_scale);
      GroupElement b = right().sample(rng, translation_scale);
      return GroupElement::from_pair(std::move(a), std::move(b));
    }
    default:
      return haar_sample(rng);
  }
}

// ---------------------------------------------------------------------------
// Descriptors

std::string Group::name() const {
  const std::string p = std::to_string(param_);
  switch (kind_) {
    case GroupKind::cyclic:
      return "C" + p;
    case GroupKind::symmetric:
      return "S" + p;
    case GroupKind::dihedral:
      return "D" + p;
    case GroupKind::orthogonal:
      return "O(" + p + ")";
    case GroupKind::special_orthogonal:
      return "SO(" + p + ")";
    case GroupKind::translation:
      return "T(" + p + ")";
    case GroupKind::euclidean:
      return "E(" + p + ")";
    case GroupKind::product:
      return left().name() + "x" + right().name();
  }
  return "?";
}

nlohmann::json Group::to_json() const {
  switch (kind_) {
    case GroupKind::cyclic:
      return {{"kind", "cyclic"}, {"n", param_}};
    case GroupKind::symmetric:
      return {{"kind", "symmetric"}, {"n", param_}};
    case GroupKind::dihedral:
      return {{"kind", "dihedral"}, {"n", param_}};
    case GroupKind::orthogonal:
      return {{"kind", "orthogonal"}, {"d", param_}};
    case GroupKind::special_orthogonal:
      return {{"kind", "special-orthogonal"}, {"d", param_}};
    case GroupKind::translation:
      return {{"kind", "translation"}, {"d", param_}};
    case GroupKind::euclidean:
      return {{"kind", "euclidean"}, {"d", param_}};
    case GroupKind::product:
      return {{"kind", "product"}, {"factors", {left().to_json(), right().to_json()}}};
  }
  return {};
}

Group Group::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidArgument("group descriptor needs a string \"kind\"");
  const std::string kind = j["kind"];
  auto int_field = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      throw InvalidArgument("group kind '" + kind + "' needs integer field '" + key + "'");
    return j[key].get<int>();
  };
  if (kind == "cyclic") return cyclic(int_field("n"));
  if (kind == "symmetric") return symmetric(int_field("n"));
  if (kind == "dihedral") return dihedral(int_field("n"));
  if (kind == "orthogonal") return orthogonal(int_field("d"));
  if (kind == "special-orthogonal") return special_orthogonal(int_field("d"));
  if (kind == "translation") return translation(int_field("d"));
  if (kind == "euclidean") return euclidean(int_field("d"));
  if (kind == "trivial") return trivial();
  if (kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2)
      throw InvalidArgument("product group needs exactly two \"factors\"");
    return product(from_json(j["factors"][0]), from_json(j["factors"][1]));
  }
  throw InvalidArgument("unknown group kind '" + kind + "'");
}

bool Group::operator==(const Group& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == GroupKind::product) return left() == other.left() && right() == other.right();
  return param_ == other.param_;
}

// ---------------------------------------------------------------------------
// Homomorphisms

Homomorphism identity_hom(const Group& g) {
  return {g, g, [](const GroupElement& x) { return x; }, HomomorphismKind::subgroup_inclusion,
          true, "id_" + g.name()};
}

Homomorphism trivial_hom(const Group& source, const Group& target) {
  auto e = target.identity();
  return {source,
          target,
          [e](const GroupElement&) { return e; },
          HomomorphismKind::custom,
          source.order() == std::optional<std::size_t>(1),
          "trivial_" + source.name() + "_" + target.name()};
}

Homomorphism hom_inject_left(const Group& k, const Group& h) {
  auto ek = k.identity();
  return {h, Group::product(k, h),
          [ek, h](const GroupElement& x) {
            h.validate(x);
            return GroupElement::from_pair(ek, x);
          },
          HomomorphismKind::left_factor_injection, true,
          "inject_" + h.name() + "_" + Group::product(k, h).name()};
}

Homomorphism product_hom(const Homomorphism& a, const Homomorphism& b) {
  auto fa = a.apply;
  auto fb = b.apply;
  return {Group::product(a.source, b.source), Group::product(a.target, b.target),
          [fa, fb](const GroupElement& x) {
            return GroupElement::from_pair(fa(x.first()), fb(x.second()));
          },
          HomomorphismKind::composite, a.injective && b.injective, a.name + "x" + b.name};
}

Homomorphism compose_hom(const Homomorphism& outer, const Homomorphism& inner) {
  if (inner.target != outer.source)
    throw StructuralError("cannot compose " + outer.name + " after " + inner.name);
  auto fo = outer.apply;
  auto fi = inner.apply;
  return {inner.source, outer.target, [fo, fi](const GroupElement& x) { return fo(fi(x)); },
          HomomorphismKind::composite, outer.injective && inner.injective,
          outer.name + "." + inner.name};
}

Homomorphism standard_inclusion(const Group& sub, const Group& group) {
  if (sub == group) return identity_hom(group);
  Homomorphism phi{sub, group, nullptr, HomomorphismKind::subgroup_inclusion, true,
                   sub.name() + "<=" + group.name()};
  if (sub.order() == std::optional<std::size_t>(1)) {
    auto e = group.identity();
    phi.apply = [e](const GroupElement&) { return e; };
    return phi;
  }
  const GroupKind sk = sub.kind();
  const GroupKind gk = group.kind();
  const int m = sub.parameter();
  const int n = group.parameter();
  if (sk == GroupKind::symmetric && gk == GroupKind::symmetric && m <= n) {
    phi.apply = [sub, n](const GroupElement& x) {
      sub.validate(x);
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::copy(x.permutation().begin(), x.permutation().end(), p.begin());
      return GroupElement::from_permutation(std::move(p));
    };
    return phi;
  }
  if (sk == GroupKind::cyclic && gk == GroupKind::cyclic && n % m == 0) {
    const std::size_t step = static_cast<std::size_t>(n / m);
    phi.apply = [sub, step](const GroupElement& x) {
      sub.validate(x);
      return GroupElement::from_index(x.index() * step);
    };
    return phi;
  }
  if (sk == GroupKind::cyclic && gk == GroupKind::dihedral && m == n) {
    phi.apply = [sub](const GroupElement& x) {
      sub.validate(x);
      return x;
    };
    return phi;
  }
  if ((sk == GroupKind::orthogonal || sk == GroupKind::special_orthogonal) &&
      gk == GroupKind::euclidean && m == n) {
    phi.apply = [sub, n](const GroupElement& x) {
      sub.validate(x);
      return GroupElement::from_euclidean(x.matrix(), Eigen::VectorXd::Zero(n));
    };
    return phi;
  }
  if (sk == GroupKind::translation && gk == GroupKind::euclidean && m == n) {
    phi.apply = [sub, n](const GroupElement& x) {
      sub.validate(x);
      return GroupElement::from_euclidean(Eigen::MatrixXd::Identity(n, n), x.translation());
    };
    return phi;
  }
  if (sk == GroupKind::special_orthogonal && gk == GroupKind::orthogonal && m == n) {
    phi.apply = [sub](const GroupElement& x) {
      sub.validate(x);
      return x;
    };
    return phi;
  }
  if (sk == GroupKind::product && gk == GroupKind::product)
    return product_hom(standard_inclusion(sub.left(), group.left()),
                       standard_inclusion(sub.right(), group.right()));
  throw UnsupportedError("no standard inclusion of " + sub.name() + " into " + group.name());
}

double homomorphism_violation(const Homomorphism& phi, RandomSource& rng, int samples,
                              std::size_t exhaustive_limit) {
  double worst = phi(phi.source.identity()).distance(phi.target.identity());
  auto check = [&](const GroupElement& a, const GroupElement& b) {
    const GroupElement lhs = phi(phi.source.compose(a, b));
    const GroupElement rhs = phi.target.compose(phi(a), phi(b));
    worst = std::max(worst, lhs.distance(rhs));
  };
  const auto n = phi.source.order();
  if (n && *n <= exhaustive_limit) {
    const auto els = phi.source.elements();
    for (const auto& a : els)
      for (const auto& b : els) check(a, b);
  } else {
    for (int i = 0; i < samples; ++i) {
      GroupElement a = phi.source.sample(rng);
      GroupElement b = phi.source.sample(rng);
      check(a, b);
    }
  }
  return worst;
}

}  // namespace equisym

#include "equisym/actions.hpp"

#include <cmath>
#include <numbers>

#include "equisym/errors.hpp"

namespace equisym {

// ---------------------------------------------------------------------------
// Carrier

Carrier Carrier::finite_set(std::size_t n) {
  Carrier c;
  c.kind_ = Kind::finite;
  c.size_ = n;
  return c;
}

Carrier Carrier::real_vector(int d) {
  if (d < 0) throw InvalidArgument("negative dimension");
  Carrier c;
  c.kind_ = Kind::vector;
  c.dim_ = d;
  return c;
}

Carrier Carrier::point_cloud(int points, int dims) {
  if (points < 0 || dims < 0) throw InvalidArgument("negative point-cloud shape");
  Carrier c;
  c.kind_ = Kind::cloud;
  c.size_ = static_cast<std::size_t>(points);
  c.dim_ = dims;
  return c;
}

Carrier Carrier::cosets() {
  Carrier c;
  c.kind_ = Kind::cosets;
  return c;
}

Carrier Carrier::pair(Carrier a, Carrier b) {
  Carrier c;
  c.kind_ = Kind::pair;
  c.parts_.push_back(std::move(a));
  c.parts_.push_back(std::move(b));
  return c;
}

bool Carrier::enumerable() const {
  if (kind_ == Kind::finite) return true;
  if (kind_ == Kind::pair) return first().enumerable() && second().enumerable();
  return false;
}

std::size_t Carrier::cardinality() const {
  if (kind_ == Kind::finite) return size_;
  if (kind_ == Kind::pair && enumerable()) return first().cardinality() * second().cardinality();
  throw UnsupportedError("carrier " + name() + " is not finite");
}

std::vector<Point> Carrier::points() const {
  const std::size_t n = cardinality();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(point_at(i));
  return out;
}

std::size_t Carrier::index_of(const Point& p) const {
  validate(p);
  if (kind_ == Kind::finite) return p.index();
  if (kind_ == Kind::pair && enumerable())
    return first().index_of(p.first()) * second().cardinality() + second().index_of(p.second());
  throw UnsupportedError("carrier " + name() + " is not finite");
}

Point Carrier::point_at(std::size_t i) const {
  if (i >= cardinality()) throw StructuralError("point index out of range for " + name());
  if (kind_ == Kind::finite) return Point::from_index(i);
  const std::size_t nb = second().cardinality();
  return Point::from_pair(first().point_at(i / nb), second().point_at(i % nb));
}

void Carrier::validate(const Point& p) const {
  auto fail = [&](const std::string& why) {
    throw StructuralError("point " + p.to_string() + " does not belong to " + name() + ": " + why);
  };
  switch (kind_) {
    case Kind::finite:
      if (p.kind() != Point::Kind::index) fail("expected an index");
      if (p.index() >= size_) fail("index out of range");
      return;
    case Kind::vector:
      if (p.kind() != Point::Kind::vector) fail("expected a vector");
      if (p.coords().rows() != dim_ || p.coords().cols() != 1) fail("dimension mismatch");
      if (!p.coords().allFinite()) throw InvariantViolation("non-finite coordinates");
      return;
    case Kind::cloud:
      if (p.kind() != Point::Kind::cloud) fail("expected a point cloud");
      if (static_cast<std::size_t>(p.coords().rows()) != size_ || p.coords().cols() != dim_)
        fail("shape mismatch");
      if (!p.coords().allFinite()) throw InvariantViolation("non-finite coordinates");
      return;
    case Kind::cosets:
      if (p.kind() != Point::Kind::element) fail("expected a coset representative");
      return;
    case Kind::pair:
      if (p.kind() != Point::Kind::pair) fail("expected a pair");
      first().validate(p.first());
      second().validate(p.second());
      return;
  }
}

bool Carrier::operator==(const Carrier& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::finite:
      return size_ == other.size_;
    case Kind::vector:
      return dim_ == other.dim_;
    case Kind::cloud:
      return size_ == other.size_ && dim_ == other.dim_;
    case Kind::cosets:
      return true;
    case Kind::pair:
      return first() == other.first() && second() == other.second();
  }
  return false;
}

std::string Carrier::name() const {
  switch (kind_) {
    case Kind::finite:
      return "finite-set(" + std::to_string(size_) + ")";
    case Kind::vector:
      return "real-vector(" + std::to_string(dim_) + ")";
    case Kind::cloud:
      return "point-cloud(" + std::to_string(size_) + "," + std::to_string(dim_) + ")";
    case Kind::cosets:
      return "cosets";
    case Kind::pair:
      return "pair(" + first().name() + "," + second().name() + ")";
  }
  return "?";
}

nlohmann::json Carrier::to_json() const {
  switch (kind_) {
    case Kind::finite:
      return {{"kind", "finite-set"}, {"n", size_}};
    case Kind::vector:
      return {{"kind", "real-vector"}, {"d", dim_}};
    case Kind::cloud:
      return {{"kind", "point-cloud"}, {"n", size_}, {"d", dim_}};
    case Kind::cosets:
      return {{"kind", "cosets"}};
    case Kind::pair:
      return {{"kind", "pair"}, {"factors", {first().to_json(), second().to_json()}}};
  }
  return {};
}

Carrier Carrier::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidArgument("carrier descriptor needs a string \"kind\"");
  const std::string kind = j["kind"];
  auto int_field = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
      throw InvalidArgument("carrier kind '" + kind + "' needs non-negative integer '" + key + "'");
    return j[key].get<int>();
  };
  if (kind == "finite-set") return finite_set(static_cast<std::size_t>(int_field("n")));
  if (kind == "real-vector") return real_vector(int_field("d"));
  if (kind == "point-cloud") return point_cloud(int_field("n"), int_field("d"));
  if (kind == "pair") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].size() != 2)
      throw InvalidArgument("pair carrier needs two \"factors\"");
    return pair(from_json(j["factors"][0]), from_json(j["factors"][1]));
  }
  throw InvalidArgument("unknown carrier kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// GSet

namespace {

PointSampler default_sampler(const Carrier& c) {
  switch (c.kind()) {
    case Carrier::Kind::finite: {
      const std::size_t n = c.size();
      return [n](RandomSource& rng) { return Point::from_index(n ? rng.index(n) : 0); };
    }
    case Carrier::Kind::vector: {
      const int d = c.dim();
      return [d](RandomSource& rng) {
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v(i) = 2.0 * rng.normal();
        return Point::from_vector(std::move(v));
      };
    }
    case Carrier::Kind::cloud: {
      const int n = static_cast<int>(c.size());
      const int d = c.dim();
      return [n, d](RandomSource& rng) {
        Eigen::MatrixXd m(n, d);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
        return Point::from_cloud(std::move(m));
      };
    }
    case Carrier::Kind::pair: {
      auto a = default_sampler(c.first());
      auto b = default_sampler(c.second());
      return [a, b](RandomSource& rng) {
        Point pa = a(rng);
        Point pb = b(rng);
        return Point::from_pair(std::move(pa), std::move(pb));
      };
    }
    case Carrier::Kind::cosets:
      break;
  }
  return [](RandomSource&) -> Point {
    throw UnsupportedError("no default sampler for coset carriers");
  };
}

}  // namespace

GSet::GSet(Group group, Carrier carrier, Action action, bool linear, std::string name) {
  auto s = std::make_shared<State>();
  s->sampler = default_sampler(carrier);
  s->group = std::move(group);
  s->carrier = std::move(carrier);
  s->action = std::move(action);
  s->linear = linear;
  s->name = name.empty() ? s->group.name() + " on " + s->carrier.name() : std::move(name);
  state_ = std::move(s);
}

Point GSet::act(const GroupElement& g, const Point& x) const {
  group().validate(g);
  carrier().validate(x);
  return state_->action(g, x);
}

Point GSet::sample_point(RandomSource& rng) const { return state_->sampler(rng); }

GSet GSet::with_sampler(PointSampler sampler) const {
  auto s = std::make_shared<State>(*state_);
  s->sampler = std::move(sampler);
  return GSet(std::move(s));
}

GSet GSet::renamed(std::string name) const {
  auto s = std::make_shared<State>(*state_);
  s->name = std::move(name);
  return GSet(std::move(s));
}

GSet product(const GSet& x, const GSet& y) {
  if (x.group() != y.group())
    throw StructuralError("product of G-sets over different groups " + x.group().name() +
                          " and " + y.group().name());
  auto s = std::make_shared<GSet::State>();
  s->group = x.group();
  s->carrier = Carrier::pair(x.carrier(), y.carrier());
  s->action = [x, y](const GroupElement& g, const Point& p) {
    return Point::from_pair(x.act(g, p.first()), y.act(g, p.second()));
  };
  s->linear = x.linear() && y.linear();
  s->name = "(" + x.name() + ")x(" + y.name() + ")";
  s->sampler = [x, y](RandomSource& rng) {
    Point a = x.sample_point(rng);
    Point b = y.sample_point(rng);
    return Point::from_pair(std::move(a), std::move(b));
  };
  s->first = std::make_shared<GSet>(x);
  s->second = std::make_shared<GSet>(y);
  return GSet(std::move(s));
}

GSet restrict(const Homomorphism& phi, const GSet& x) {
  if (phi.target != x.group())
    throw StructuralError("cannot restrict a " + x.group().name() + "-set along " + phi.name +
                          " (target " + phi.target.name() + ")");
  auto s = std::make_shared<GSet::State>(*x.state_);
  s->group = phi.source;
  auto f = phi.apply;
  s->action = [x, f](const GroupElement& h, const Point& p) { return x.act(f(h), p); };
  s->name = "R[" + phi.name + "](" + x.name() + ")";
  s->first.reset();
  s->second.reset();
  s->cosets.reset();
  s->parent = std::make_shared<GSet>(x);
  s->restriction = phi;
  return GSet(std::move(s));
}

GSet trivial_gset(const Group& g, const Carrier& c) {
  return GSet(g, c, [](const GroupElement&, const Point& p) { return p; }, true,
              "trivial " + g.name() + " on " + c.name());
}

GSet coset_gset(const CosetSpace& cs) {
  auto s = std::make_shared<GSet::State>();
  s->group = cs.group();
  s->carrier = cs.finite() ? Carrier::finite_set(cs.size()) : Carrier::cosets();
  s->action = [cs](const GroupElement& g, const Point& p) {
    return cs.to_point(cs.act(g, cs.from_point(p)));
  };
  s->linear = false;
  s->name = cs.group().name() + "/" + cs.subgroup().name();
  const Group g = cs.group();
  s->sampler = [cs, g](RandomSource& rng) { return cs.to_point(cs.coset_of(g.sample(rng))); };
  s->cosets = cs;
  return GSet(std::move(s));
}

GSet natural_gset(const Group& g) {
  const int n = g.parameter();
  switch (g.kind()) {
    case GroupKind::symmetric:
      return GSet(g, Carrier::finite_set(n),
                  [](const GroupElement& s, const Point& p) {
                    return Point::from_index(static_cast<std::size_t>(s.permutation()[p.index()]));
                  },
                  true, "S" + std::to_string(n) + " natural");
    case GroupKind::cyclic:
      return GSet(g, Carrier::finite_set(n),
                  [n](const GroupElement& k, const Point& p) {
                    return Point::from_index((p.index() + k.index()) % n);
                  },
                  true, "C" + std::to_string(n) + " rotation");
    case GroupKind::dihedral:
      return GSet(g, Carrier::finite_set(n),
                  [n](const GroupElement& e, const Point& p) {
                    // r^a s^b . i = a + (-1)^b i
                    const long long a = static_cast<long long>(e.index()) % n;
                    const long long b = static_cast<long long>(e.index()) / n;
                    const long long i = static_cast<long long>(p.index());
                    const long long v = b ? a - i : a + i;
                    return Point::from_index(static_cast<std::size_t>(((v % n) + n) % n));
                  },
                  true, "D" + std::to_string(n) + " vertices");
    default:
      break;
  }
  throw UnsupportedError("no natural finite action for " + g.name());
}

GSet regular_gset(const Group& g) {
  if (!g.finite()) throw UnsupportedError("regular action needs a finite group");
  return GSet(g, Carrier::finite_set(*g.order()),
              [g](const GroupElement& a, const Point& p) {
                return Point::from_index(g.index_of(g.compose(a, g.element(p.index()))));
              },
              true, g.name() + " regular");
}

GSet table_gset(const Group& g, std::size_t n, std::vector<std::vector<std::size_t>> table,
                std::string name) {
  if (!g.finite()) throw UnsupportedError("table actions need a finite group");
  if (table.size() != *g.order()) throw StructuralError("action table needs one row per element");
  for (const auto& row : table) {
    if (row.size() != n) throw StructuralError("action table row has the wrong length");
    for (std::size_t v : row)
      if (v >= n) throw StructuralError("action table entry out of range");
  }
  auto t = std::make_shared<const std::vector<std::vector<std::size_t>>>(std::move(table));
  return GSet(g, Carrier::finite_set(n),
              [g, t](const GroupElement& a, const Point& p) {
                return Point::from_index((*t)[g.index_of(a)][p.index()]);
              },
              true, std::move(name));
}

GSet negation_gset(int d) {
  return GSet(Group::cyclic(2), Carrier::real_vector(d),
              [](const GroupElement& g, const Point& p) {
                return g.index() ? Point::from_vector(-p.vector()) : p;
              },
              true, "C2 negation on R^" + std::to_string(d));
}

Eigen::MatrixXd representation_matrix(const Group& g, const GroupElement& e, int d) {
  switch (g.kind()) {
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return e.matrix();
    case GroupKind::cyclic:
    case GroupKind::dihedral: {
      if (d != 2) break;
      const int n = g.parameter();
      const std::size_t a = e.index() % static_cast<std::size_t>(n);
      const bool reflect = g.kind() == GroupKind::dihedral && e.index() >= static_cast<std::size_t>(n);
      const double th = 2.0 * std::numbers::pi * static_cast<double>(a) / n;
      Eigen::Matrix2d r;
      r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      if (reflect) r = r * Eigen::Vector2d(1.0, -1.0).asDiagonal();
      return r;
    }
    default:
      break;
  }
  throw UnsupportedError("no matrix representation of " + g.name() + " on R^" + std::to_string(d));
}

GSet matrix_gset(const Group& g, int d) {
  const bool orthogonal =
      g.kind() == GroupKind::orthogonal || g.kind() == GroupKind::special_orthogonal;
  if (orthogonal && g.parameter() != d)
    throw StructuralError(g.name() + " does not act on R^" + std::to_string(d));
  if (!orthogonal) representation_matrix(g, g.identity(), d);  // throws if unsupported
  return GSet(g, Carrier::real_vector(d),
              [g, d](const GroupElement& e, const Point& p) {
                return Point::from_vector(representation_matrix(g, e, d) * p.vector());
              },
              true, g.name() + " on R^" + std::to_string(d));
}

GSet translation_gset(int d) {
  return GSet(Group::translation(d), Carrier::real_vector(d),
              [](const GroupElement& t, const Point& p) {
                return Point::from_vector(p.vector() + t.translation());
              },
              false, "T(" + std::to_string(d) + ") on R^" + std::to_string(d));
}

GSet euclidean_gset(int d) {
  return GSet(Group::euclidean(d), Carrier::real_vector(d),
              [](const GroupElement& e, const Point& p) {
                return Point::from_vector(e.matrix() * p.vector() + e.translation());
              },
              false, "E(" + std::to_string(d) + ") on R^" + std::to_string(d));
}

namespace {

bool cloud_group_supported(const Group& g, int points, int dims, bool& linear) {
  switch (g.kind()) {
    case GroupKind::symmetric:
      return g.parameter() == points;
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return g.parameter() == dims;
    case GroupKind::translation:
    case GroupKind::euclidean:
      linear = false;
      return g.parameter() == dims;
    case GroupKind::product:
      return cloud_group_supported(g.left(), points, dims, linear) &&
             cloud_group_supported(g.right(), points, dims, linear);
    case GroupKind::cyclic:
      return g.parameter() == 1;
    default:
      return false;
  }
}

Eigen::MatrixXd act_on_cloud(const Group& g, const GroupElement& e, const Eigen::MatrixXd& x) {
  switch (g.kind()) {
    case GroupKind::symmetric: {
      // (s.X) row s(i) = X row i
      Eigen::MatrixXd out(x.rows(), x.cols());
      const auto& p = e.permutation();
      for (Eigen::Index i = 0; i < x.rows(); ++i) out.row(p[static_cast<std::size_t>(i)]) = x.row(i);
      return out;
    }
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return x * e.matrix().transpose();
    case GroupKind::translation:
      return x.rowwise() + e.translation().transpose();
    case GroupKind::euclidean:
      return (x * e.matrix().transpose()).rowwise() + e.translation().transpose();
    case GroupKind::product:
      return act_on_cloud(g.left(), e.first(), act_on_cloud(g.right(), e.second(), x));
    default:
      return x;
  }
}

}  // namespace

GSet cloud_gset(const Group& g, int points, int dims) {
  bool linear = true;
  if (!cloud_group_supported(g, points, dims, linear))
    throw UnsupportedError(g.name() + " has no point-cloud action on point-cloud(" +
                           std::to_string(points) + "," + std::to_string(dims) + ")");
  return GSet(g, Carrier::point_cloud(points, dims),
              [g](const GroupElement& e, const Point& p) {
                return Point::from_cloud(act_on_cloud(g, e, p.coords()));
              },
              linear, g.name() + " on point-cloud(" + std::to_string(points) + "," +
                          std::to_string(dims) + ")");
}

GSet standard_gset(const Group& g, const Carrier& c, const std::string& action) {
  if (action == "trivial") return trivial_gset(g, c);
  if (action == "natural") {
    GSet x = natural_gset(g);
    if (x.carrier() != c) throw StructuralError("natural action of " + g.name() + " is on " + x.carrier().name());
    return x;
  }
  if (action == "regular") {
    GSet x = regular_gset(g);
    if (x.carrier() != c) throw StructuralError("regular action of " + g.name() + " is on " + x.carrier().name());
    return x;
  }
  if (c.kind() == Carrier::Kind::vector) {
    if (action == "negation") {
      if (g != Group::cyclic(2)) throw StructuralError("negation is a C2 action");
      return negation_gset(c.dim());
    }
    if (action == "matrix") return matrix_gset(g, c.dim());
    if (action == "translation") {
      if (g != Group::translation(c.dim())) throw StructuralError("translation action needs T(d)");
      return translation_gset(c.dim());
    }
    if (action == "euclidean") {
      if (g != Group::euclidean(c.dim())) throw StructuralError("euclidean action needs E(d)");
      return euclidean_gset(c.dim());
    }
  }
  if (c.kind() == Carrier::Kind::cloud && action == "cloud")
    return cloud_gset(g, static_cast<int>(c.size()), c.dim());
  throw InvalidArgument("unknown action '" + action + "' for " + g.name() + " on " + c.name());
}

}  // namespace equisym

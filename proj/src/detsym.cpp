#include "equisym/detsym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "equisym/errors.hpp"
#include "equisym/parallel.hpp"

namespace equisym {

Point EquivariantMap::operator()(const Point& x) const {
  domain.carrier().validate(x);
  return fn(x);
}

EquivariantMap make_map(GSet domain, GSet codomain, std::function<Point(const Point&)> fn,
                        std::string name) {
  if (domain.group() != codomain.group())
    throw StructuralError("map " + name + " between G-sets over " + domain.group().name() +
                          " and " + codomain.group().name());
  return {std::move(domain), std::move(codomain), std::move(fn), std::move(name)};
}

GammaMap make_gamma(const GSet& domain, const CosetSpace& cs, std::function<Coset(const Point&)> gamma,
                    std::string name, Exclusion exclusion) {
  if (domain.group() != cs.group())
    throw StructuralError("gamma on a " + domain.group().name() + "-set into cosets of " +
                          cs.group().name());
  auto fn = [cs, gamma](const Point& x) { return cs.to_point(gamma(x)); };
  return {make_map(domain, coset_gset(cs), fn, std::move(name)), cs, std::move(exclusion)};
}

// ---------------------------------------------------------------------------
// gamma constructors

GammaMap sign_gamma() {
  const CosetSpace cs = CosetSpace::regular(Group::cyclic(2));
  const Coset pos = cs.coset_of(GroupElement::from_index(0));
  const Coset neg = cs.coset_of(GroupElement::from_index(1));
  return make_gamma(
      negation_gset(1), cs, [pos, neg](const Point& x) { return x.coords()(0) >= 0.0 ? pos : neg; },
      "sign", [](const Point& x) { return x.coords()(0) == 0.0; });
}

GammaMap translation_gamma(int d) {
  const CosetSpace cs = CosetSpace::regular(Group::translation(d));
  return make_gamma(translation_gset(d), cs,
                    [cs](const Point& x) {
                      return cs.coset_of(GroupElement::from_translation(x.vector()));
                    },
                    "translation");
}

std::optional<GroupElement> translation_in(const Group& g, const Eigen::VectorXd& t) {
  switch (g.kind()) {
    case GroupKind::translation:
      if (g.parameter() == t.size()) return GroupElement::from_translation(t);
      return std::nullopt;
    case GroupKind::euclidean:
      if (g.parameter() == t.size())
        return GroupElement::from_euclidean(Eigen::MatrixXd::Identity(t.size(), t.size()), t);
      return std::nullopt;
    case GroupKind::product:
      if (auto a = translation_in(g.left(), t))
        return GroupElement::from_pair(*a, g.right().identity());
      if (auto b = translation_in(g.right(), t))
        return GroupElement::from_pair(g.left().identity(), *b);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::optional<GroupElement> orthogonal_in(const Group& g, const Eigen::MatrixXd& q) {
  switch (g.kind()) {
    case GroupKind::orthogonal:
      if (g.parameter() == q.rows()) return GroupElement::from_matrix(q);
      return std::nullopt;
    case GroupKind::product:
      if (auto a = orthogonal_in(g.left(), q)) return GroupElement::from_pair(*a, g.right().identity());
      if (auto b = orthogonal_in(g.right(), q)) return GroupElement::from_pair(g.left().identity(), *b);
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

GammaMap centroid_gamma(const GSet& clouds, const CosetSpace& cs) {
  if (clouds.carrier().kind() != Carrier::Kind::cloud)
    throw StructuralError("centroid gamma needs a point-cloud G-set");
  const int d = clouds.carrier().dim();
  if (!translation_in(cs.group(), Eigen::VectorXd::Zero(d)))
    throw StructuralError("centroid gamma needs translations in " + cs.group().name());
  const Group g = cs.group();
  return make_gamma(clouds, cs,
                    [cs, g](const Point& x) {
                      const Eigen::VectorXd c = x.coords().rows() > 0
                                                    ? Eigen::VectorXd(x.coords().colwise().mean().transpose())
                                                    : Eigen::VectorXd::Zero(x.coords().cols());
                      return cs.coset_of(*translation_in(g, c));
                    },
                    "centroid");
}

GammaMap pca_frame_gamma(const GSet& clouds, const CosetSpace& cs) {
  if (clouds.carrier().kind() != Carrier::Kind::cloud)
    throw StructuralError("PCA frame gamma needs a point-cloud G-set");
  const int d = clouds.carrier().dim();
  if (!orthogonal_in(cs.group(), Eigen::MatrixXd::Identity(d, d)))
    throw StructuralError("PCA frame gamma needs O(" + std::to_string(d) + ") in " + cs.group().name());
  struct Frame {
    Eigen::MatrixXd q;
    bool degenerate = false;
  };
  auto frame = [d](const Eigen::MatrixXd& x) {
    Frame f;
    const Eigen::MatrixXd m = x.transpose() * x;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXd ev = es.eigenvalues().reverse();
    f.q = es.eigenvectors().rowwise().reverse();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    for (int k = 0; k + 1 < d; ++k)
      if (ev(k) - ev(k + 1) < 1e-6 * scale) f.degenerate = true;
    for (int k = 0; k < d; ++k) {
      const Eigen::VectorXd proj = x * f.q.col(k);
      const double third = proj.array().cube().sum();
      if (std::abs(third) < 1e-9 * std::pow(scale, 1.5)) f.degenerate = true;
      if (third < 0) f.q.col(k) *= -1.0;
    }
    return f;
  };
  const Group g = cs.group();
  return make_gamma(
      clouds, cs,
      [cs, g, frame](const Point& x) { return cs.coset_of(*orthogonal_in(g, frame(x.coords()).q)); },
      "pca-frame", [frame](const Point& x) { return frame(x.coords()).degenerate; });
}

GammaMap constant_gamma(const GSet& x, const CosetSpace& cs) {
  const Coset only = cs.coset_of(cs.group().identity());
  if (cs.finite() && cs.size() != 1)
    throw InvalidArgument("constant gamma is only equivariant when H = G");
  return make_gamma(x, cs, [only](const Point&) { return only; }, "constant");
}

GammaMap orbit_gamma(const GSet& x, const CosetSpace& cs) {
  if (!x.carrier().enumerable() || !cs.finite())
    throw UnsupportedError("orbit gamma needs a finite carrier and a finite coset space");
  const Group& g = x.group();
  const auto elements = g.elements();
  const auto points = x.carrier().points();
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> table(points.size(), none);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (table[i] != none) continue;
    std::vector<GroupElement> stab;
    for (const auto& e : elements)
      if (x.act(e, points[i]).distance(points[i]) == 0.0) stab.push_back(e);
    std::optional<Coset> chosen;
    for (const auto& c : cs.cosets()) {
      const bool fixed = std::all_of(stab.begin(), stab.end(),
                                     [&](const GroupElement& s) { return cs.act(s, c).id == c.id; });
      if (fixed) {
        chosen = c;
        break;
      }
    }
    if (!chosen)
      throw UnsupportedError("no equivariant gamma: stabiliser of " + points[i].to_string() +
                             " fixes no coset of " + cs.subgroup().name());
    for (const auto& e : elements)
      table[x.carrier().index_of(x.act(e, points[i]))] = cs.act(e, *chosen).id;
  }
  const Carrier carrier = x.carrier();
  return make_gamma(x, cs,
                    [cs, table, carrier](const Point& p) { return cs.coset(table[carrier.index_of(p)]); },
                    "orbit");
}

// ---------------------------------------------------------------------------
// input checks

AuditReport check_input_equivariance(const EquivariantMap& f, const SymOptions& opts) {
  CheckOptions co;
  co.tolerance = opts.tolerance;
  co.exclude = opts.exclude;
  co.instance = "input " + f.name;
  const Group& h = f.group();
  if (h.order() == std::optional<std::size_t>(1)) {
    AuditReport r;
    r.instance = co.instance;
    r.mode = "trivial";
    return r;
  }
  const bool small_group = h.finite() && *h.order() <= 512;
  const bool small_carrier = f.domain.carrier().enumerable() && f.domain.carrier().cardinality() <= 512;
  if (small_group && small_carrier &&
      *h.order() * f.domain.carrier().cardinality() <= 20000)
    return check_equivariance(f, AuditMode::exhaustive(), co);
  return check_equivariance(f, AuditMode::sampled(opts.spot_checks, opts.seed), co);
}

namespace {

void require_input(const EquivariantMap& f, const SymOptions& opts) {
  if (!opts.check_input) return;
  const AuditReport r = check_input_equivariance(f, opts);
  if (!r.pass) {
    const auto& w = r.witnesses.front();
    throw IllTypedInput(f.name + " is not " + f.group().name() + "-equivariant: violation " +
                        std::to_string(w.violation) + " at g = " + w.element + ", x = " + w.point);
  }
}

void require_restriction(const EquivariantMap& f, const CosetSpace& cs, const GSet& x, const GSet& y) {
  if (cs.group() != x.group() || cs.group() != y.group())
    throw StructuralError("G-sets over " + x.group().name() + "/" + y.group().name() +
                          " do not match coset space of " + cs.group().name());
  if (f.group() != cs.subgroup())
    throw StructuralError(f.name + " is " + f.group().name() + "-equivariant but the subgroup is " +
                          cs.subgroup().name());
  if (f.domain.carrier() != x.carrier() || f.codomain.carrier() != y.carrier())
    throw StructuralError(f.name + " does not map " + x.carrier().name() + " to " + y.carrier().name());
}

const GSet& parent_of(const GSet& s, const std::string& what) {
  if (!s.parent())
    throw StructuralError(what + " is not a restricted G-set; pass the G-sets explicitly");
  return *s.parent();
}

}  // namespace

// ---------------------------------------------------------------------------
// sharp / flat / precompose / symmetrize

Point sharp_via(const EquivariantMap& f, const GSet& x, const GSet& y, const GroupElement& g,
                const Point& p) {
  return y.act(g, f.fn(x.act(x.group().inverse(g), p)));
}

EquivariantMap sharp(const EquivariantMap& f, const CosetSpace& cs, const GSet& x, const GSet& y,
                     const SymOptions& opts) {
  require_restriction(f, cs, x, y);
  require_input(f, opts);
  auto fn = f.fn;
  const Group g = cs.group();
  return make_map(product(coset_gset(cs), x), y,
                  [cs, x, y, fn, g](const Point& cx) {
                    const GroupElement s = cs.section(cs.from_point(cx.first()));
                    return y.act(s, fn(x.act(g.inverse(s), cx.second())));
                  },
                  f.name + "#");
}

EquivariantMap sharp(const EquivariantMap& f, const CosetSpace& cs, const SymOptions& opts) {
  return sharp(f, cs, parent_of(f.domain, f.name + " domain"),
               parent_of(f.codomain, f.name + " codomain"), opts);
}

EquivariantMap flat(const EquivariantMap& h, const CosetSpace& cs) {
  const GSet* cosets = h.domain.first();
  const GSet* x = h.domain.second();
  if (!cosets || !x || !cosets->coset_space())
    throw StructuralError(h.name + " is not defined on G/H (x) X");
  if (cosets->group() != cs.group()) throw StructuralError("coset space mismatch in flat");
  const Point e = cs.to_point(cs.coset_of(cs.group().identity()));
  auto fn = h.fn;
  return make_map(restrict(cs.inclusion(), *x), restrict(cs.inclusion(), h.codomain),
                  [fn, e](const Point& p) { return fn(Point::from_pair(e, p)); }, h.name + "_flat");
}

EquivariantMap precompose(const EquivariantMap& fsharp, const GammaMap& gamma) {
  const GSet* x = fsharp.domain.second();
  if (!x || !fsharp.domain.first()) throw StructuralError(fsharp.name + " is not defined on G/H (x) X");
  if (x->carrier() != gamma.map.domain.carrier() || fsharp.group() != gamma.map.group())
    throw StructuralError("gamma " + gamma.map.name + " does not match " + fsharp.name);
  auto fs = fsharp.fn;
  auto gm = gamma.map.fn;
  return make_map(gamma.map.domain, fsharp.codomain,
                  [fs, gm](const Point& p) { return fs(Point::from_pair(gm(p), p)); },
                  fsharp.name + " o Gamma");
}

EquivariantMap symmetrize(const EquivariantMap& f, const GammaMap& gamma, const GSet& y,
                          const SymOptions& opts) {
  const GSet& x = gamma.map.domain;
  const CosetSpace& cs = gamma.cs;
  require_restriction(f, cs, x, y);
  require_input(f, opts);
  auto fn = f.fn;
  auto gm = gamma.map.fn;
  const Group g = cs.group();
  return make_map(x, y,
                  [cs, x, y, fn, gm, g](const Point& p) {
                    const GroupElement h = cs.section(cs.from_point(gm(p)));
                    return y.act(h, fn(x.act(g.inverse(h), p)));
                  },
                  "sym(" + f.name + ")");
}

EquivariantMap symmetrize(const EquivariantMap& f, const GammaMap& gamma, const SymOptions& opts) {
  return symmetrize(f, gamma, parent_of(f.codomain, f.name + " codomain"), opts);
}

// ---------------------------------------------------------------------------
// audits

namespace {

Observation observe(const EquivariantMap& f, const GroupElement& g, const Point& x,
                    const CheckOptions& opts) {
  Observation o;
  const Point gx = f.domain.act(g, x);
  if (opts.exclude && (opts.exclude(x) || opts.exclude(gx))) {
    o.skipped = true;
    return o;
  }
  const Point lhs = f.fn(gx);
  const Point rhs = f.codomain.act(g, f.fn(x));
  o.violation = lhs.distance(rhs);
  if (o.violation > opts.tolerance) {
    o.element = g.to_string();
    o.point = x.to_string();
  }
  return o;
}

}  // namespace

AuditReport check_equivariance(const EquivariantMap& f, const AuditMode& mode, const CheckOptions& opts) {
  const std::string instance = opts.instance.empty() ? f.name : opts.instance;
  if (mode.kind == AuditMode::Kind::exhaustive) {
    if (!f.group().finite() || !f.domain.carrier().enumerable())
      throw UnsupportedError("exhaustive audit of " + instance + " needs a finite group and carrier");
    const auto elements = f.group().elements();
    const auto points = f.domain.carrier().points();
    std::vector<Observation> obs(elements.size() * points.size());
    par::for_each_index(obs.size(), [&](std::size_t i) {
      obs[i] = observe(f, elements[i / points.size()], points[i % points.size()], opts);
    });
    return summarize(instance, "exhaustive", obs, opts.tolerance, 0, opts.max_witnesses);
  }
  if (mode.samples == 0) throw InvalidArgument("sampled audit needs at least one sample");
  const RandomSource master(mode.seed);
  std::vector<Observation> obs(mode.samples);
  par::for_each_index(obs.size(), [&](std::size_t i) {
    RandomSource rng = master.split(i);
    const GroupElement g = opts.element_sampler ? opts.element_sampler(rng) : f.group().sample(rng);
    const Point x = opts.point_sampler ? opts.point_sampler(rng) : f.domain.sample_point(rng);
    obs[i] = observe(f, g, x, opts);
  });
  return summarize(instance, "sampled", obs, opts.tolerance, mode.seed, opts.max_witnesses);
}

AuditReport check_equivariance_on(const EquivariantMap& f, const std::vector<GroupElement>& elements,
                                  const std::vector<Point>& points, const CheckOptions& opts) {
  std::vector<Observation> obs(elements.size() * points.size());
  par::for_each_index(obs.size(), [&](std::size_t i) {
    obs[i] = observe(f, elements[i / points.size()], points[i % points.size()], opts);
  });
  return summarize(opts.instance.empty() ? f.name : opts.instance, "listed", obs, opts.tolerance, 0,
                   opts.max_witnesses);
}

double max_difference(const EquivariantMap& a, const EquivariantMap& b, const std::vector<Point>& points) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, a(p).distance(b(p)));
  return worst;
}

}  // namespace equisym

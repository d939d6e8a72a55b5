#include "equisym/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "equisym/errors.hpp"

namespace equisym {

const Group& model_group(const Model& m) {
  return std::visit([](const auto& v) -> const Group& { return v.group(); }, m);
}
const GSet& model_domain(const Model& m) {
  return std::visit([](const auto& v) -> const GSet& { return v.domain; }, m);
}
const GSet& model_codomain(const Model& m) {
  return std::visit([](const auto& v) -> const GSet& { return v.codomain; }, m);
}
const std::string& model_name(const Model& m) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, m);
}

const CosetSpace& gamma_cosets(const std::variant<GammaMap, GammaKernel>& gamma) {
  return std::visit([](const auto& v) -> const CosetSpace& { return v.cs; }, gamma);
}

namespace {

const GSet& gamma_domain(const std::variant<GammaMap, GammaKernel>& gamma) {
  if (const auto* m = std::get_if<GammaMap>(&gamma)) return m->map.domain;
  return std::get<GammaKernel>(gamma).kernel.domain;
}

/// Drops trivial factors: {e} x S_n and S_n describe the same subgroup.
Group strip_trivial(const Group& g) {
  if (g.kind() != GroupKind::product) return g;
  const Group a = strip_trivial(g.left());
  const Group b = strip_trivial(g.right());
  if (a == Group::trivial()) return b;
  if (b == Group::trivial()) return a;
  return Group::product(a, b);
}

/// phi and the coset space's inclusion must embed the same subgroup.
void require_same_image(const Homomorphism& phi, const CosetSpace& cs) {
  if (strip_trivial(phi.source) != strip_trivial(cs.subgroup()))
    throw StructuralError(phi.name + " embeds " + phi.source.name() + " but the quotient is by " +
                          cs.subgroup().name());
  std::vector<GroupElement> probe;
  if (phi.source.finite() && *phi.source.order() <= 1000) {
    probe = phi.source.elements();
  } else {
    RandomSource rng(0x1a1a);
    for (int i = 0; i < 32; ++i) probe.push_back(phi.source.sample(rng));
  }
  const Coset base = cs.coset_of(cs.group().identity());
  for (const auto& h : probe)
    if (!cs.same(cs.coset_of(phi(h)), base))
      throw StructuralError(phi.name + " sends " + h.to_string() + " outside the subgroup of " +
                            cs.group().name() + "/" + cs.subgroup().name());
}

Model rebase(const Model& model, const GSet& rx, const GSet& ry) {
  if (model_domain(model).carrier() != rx.carrier() || model_codomain(model).carrier() != ry.carrier())
    throw StructuralError(model_name(model) + " maps " + model_domain(model).carrier().name() + " -> " +
                          model_codomain(model).carrier().name() + ", stage expects " +
                          rx.carrier().name() + " -> " + ry.carrier().name());
  if (const auto* f = std::get_if<EquivariantMap>(&model)) return make_map(rx, ry, f->fn, f->name);
  const Kernel& k = std::get<Kernel>(model);
  return make_kernel(rx, ry, k.sampler, k.table, k.atoms, k.name);
}

}  // namespace

Model symmetrize_along(const Homomorphism& phi, const Model& model,
                       const std::variant<GammaMap, GammaKernel>& gamma, const CosetSpace& cs,
                       const GSet& x, const GSet& y, const AlongOptions& opts) {
  if (!phi.injective)
    throw UnsupportedError("symmetrisation along the non-injective " + phi.name +
                           " is not supported; only injective homomorphisms are");
  if (phi.target != cs.group() || x.group() != cs.group() || y.group() != cs.group())
    throw StructuralError("stage along " + phi.name + " mixes groups " + phi.target.name() + ", " +
                          cs.group().name() + ", " + x.group().name() + ", " + y.group().name());
  if (model_group(model) != phi.source)
    throw StructuralError(model_name(model) + " is " + model_group(model).name() +
                          "-equivariant; " + phi.name + " starts from " + phi.source.name());
  if (gamma_cosets(gamma).group() != cs.group() || gamma_domain(gamma).carrier() != x.carrier())
    throw StructuralError("gamma does not match the stage along " + phi.name);
  require_same_image(phi, cs);

  const Model rebased = rebase(model, restrict(cs.inclusion(), x), restrict(cs.inclusion(), y));
  const auto* f = std::get_if<EquivariantMap>(&rebased);
  const auto* gm = std::get_if<GammaMap>(&gamma);
  if (f && gm) return symmetrize(*f, *gm, y, opts.det);
  const Kernel k = f ? from_function(*f) : std::get<Kernel>(rebased);
  const GammaKernel gk = gm ? deterministic_gamma(*gm) : std::get<GammaKernel>(gamma);
  return stochastic_symmetrize(k, gk, y, opts.stoch);
}

Model symmetrize_along(const SymStage& stage, const Model& model, const AlongOptions& opts) {
  return symmetrize_along(stage.phi, model, stage.gamma, stage.cs, stage.x, stage.y, opts);
}

SymPipeline SymPipeline::build(Model base, std::vector<SymStage> stages) {
  Group current = model_group(base);
  Carrier cx = model_domain(base).carrier();
  Carrier cy = model_codomain(base).carrier();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const SymStage& s = stages[i];
    const std::string where = "stage " + std::to_string(i) + (s.name.empty() ? "" : " (" + s.name + ")");
    if (s.phi.source != current)
      throw StructuralError(where + " upgrades from " + s.phi.source.name() + " but receives a " +
                            current.name() + "-equivariant model");
    if (s.cs.group() != s.phi.target || gamma_cosets(s.gamma).group() != s.phi.target ||
        s.x.group() != s.phi.target || s.y.group() != s.phi.target)
      throw StructuralError(where + ": coset space, gamma and G-sets must all be over " +
                            s.phi.target.name());
    if (s.x.carrier() != cx || s.y.carrier() != cy || gamma_domain(s.gamma).carrier() != cx)
      throw StructuralError(where + " carriers do not match the model");
    if (s.kind == StageKind::deterministic && !std::holds_alternative<GammaMap>(s.gamma))
      throw StructuralError(where + " is deterministic but its gamma is a kernel");
    current = s.phi.target;
  }
  return SymPipeline(std::move(base), std::move(stages));
}

const Group& SymPipeline::group() const {
  return stages_.empty() ? model_group(base_) : stages_.back().phi.target;
}

Model run_pipeline(const SymPipeline& p, const AlongOptions& opts) {
  Model m = p.base();
  for (const auto& s : p.stages()) m = symmetrize_along(s, m, opts);
  return m;
}

// ---------------------------------------------------------------------------
// point clouds

EquivariantMap point_cloud_base(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("point cloud demo needs n >= 1");
  RandomSource rng(seed);
  Eigen::Matrix3d a, c;
  Eigen::Vector3d b;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = rng.normal() / std::sqrt(3.0);
    b(i) = rng.normal();
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = rng.normal() / std::sqrt(3.0);
  const GSet x = cloud_gset(Group::symmetric(n), n, 3);
  return make_map(x, x,
                  [a, b, c](const Point& p) {
                    const Eigen::MatrixXd& pts = p.coords();
                    const Eigen::RowVector3d pooled = (c * pts.colwise().mean().transpose()).transpose();
                    Eigen::MatrixXd out = ((pts * a.transpose()).rowwise() + b.transpose()).array().tanh();
                    out.rowwise() += pooled;
                    return Point::from_cloud(std::move(out));
                  },
                  "cloud-mlp");
}

namespace {

GammaMap first_point_gamma(const GSet& clouds, const CosetSpace& cs) {
  const Group g = cs.group();
  if (!translation_in(g, Eigen::VectorXd::Zero(clouds.carrier().dim())))
    throw StructuralError("first-point gamma needs translations in " + g.name());
  return make_gamma(clouds, cs,
                    [cs, g](const Point& x) {
                      return cs.coset_of(*translation_in(g, x.coords().row(0).transpose()));
                    },
                    "first-point");
}

GammaMap translation_gamma_for(const std::string& name, const GSet& clouds, const CosetSpace& cs) {
  if (name == "centroid") return centroid_gamma(clouds, cs);
  if (name == "first-point") return first_point_gamma(clouds, cs);
  throw InvalidArgument("unknown translation gamma '" + name + "' (centroid, first-point)");
}

Exclusion any_of(std::vector<Exclusion> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Exclusion& e) { return !e; }),
              parts.end());
  if (parts.empty()) return nullptr;
  return [parts](const Point& x) {
    const Eigen::MatrixXd& c = x.coords();
    const Point centred = Point::from_cloud(c.rowwise() - c.colwise().mean());
    for (const auto& e : parts)
      if (e(x) || e(centred)) return true;
    return false;
  };
}

std::vector<Exclusion> stage_exclusions(const SymPipeline& p) {
  std::vector<Exclusion> out;
  for (const auto& s : p.stages())
    std::visit([&](const auto& g) { out.push_back(g.exclusion); }, s.gamma);
  return out;
}

}  // namespace

SymPipeline point_cloud_pipeline(int n, std::uint64_t seed, const PointCloudDemoOptions& opts) {
  const Group sn = Group::symmetric(n);
  const Group o3 = Group::orthogonal(3);
  EquivariantMap base = point_cloud_base(n, seed);
  std::vector<SymStage> stages;
  for (const auto& spec : opts.stages) {
    const std::string name = spec.upgrade + "/" + spec.gamma;
    if (spec.upgrade == "orthogonal") {
      const Homomorphism phi = hom_inject_left(o3, sn);
      const CosetSpace cs = CosetSpace::product(CosetSpace::regular(o3), CosetSpace::singleton(sn));
      const GSet x = cloud_gset(phi.target, n, 3);
      if (spec.gamma == "haar") {
        stages.push_back({phi, haar_gamma(cs, x), cs, x, x, StageKind::stochastic, name});
      } else if (spec.gamma == "pca") {
        stages.push_back({phi, pca_frame_gamma(x, cs), cs, x, x, StageKind::deterministic, name});
      } else {
        throw InvalidArgument("unknown orthogonal gamma '" + spec.gamma + "' (haar, pca)");
      }
    } else if (spec.upgrade == "euclidean" || spec.upgrade == "translation") {
      const bool euclid = spec.upgrade == "euclidean";
      const Group t3 = Group::translation(3);
      const Homomorphism phi = euclid ? product_hom(standard_inclusion(o3, Group::euclidean(3)), identity_hom(sn))
                                      : hom_inject_left(t3, sn);
      const CosetSpace cs =
          CosetSpace::product(euclid ? CosetSpace::euclidean_over_orthogonal(3) : CosetSpace::regular(t3),
                              CosetSpace::singleton(sn));
      const GSet x = cloud_gset(phi.target, n, 3);
      stages.push_back({phi, translation_gamma_for(spec.gamma, x, cs), cs, x, x, StageKind::deterministic, name});
    } else {
      throw InvalidArgument("unknown upgrade '" + spec.upgrade + "' (orthogonal, euclidean, translation)");
    }
  }
  return SymPipeline::build(std::move(base), std::move(stages));
}

std::function<GroupElement(RandomSource&)> rigid_free_sampler(const Group& g) {
  switch (g.kind()) {
    case GroupKind::orthogonal:
    case GroupKind::special_orthogonal:
      return [g](RandomSource&) { return g.identity(); };
    case GroupKind::euclidean:
      return [g](RandomSource& rng) {
        const int d = g.parameter();
        Eigen::VectorXd t(d);
        for (int i = 0; i < d; ++i) t(i) = 2.0 * rng.normal();
        return GroupElement::from_euclidean(Eigen::MatrixXd::Identity(d, d), t);
      };
    case GroupKind::product: {
      auto a = rigid_free_sampler(g.left());
      auto b = rigid_free_sampler(g.right());
      return [a, b](RandomSource& rng) {
        GroupElement x = a(rng);
        GroupElement y = b(rng);
        return GroupElement::from_pair(std::move(x), std::move(y));
      };
    }
    default:
      return [g](RandomSource& rng) { return g.sample(rng); };
  }
}

AuditReport demo_point_cloud(int n, std::uint64_t seed, const PointCloudDemoOptions& opts) {
  const RandomSource master(seed);
  const SymPipeline pipe = point_cloud_pipeline(n, seed, opts);
  const EquivariantMap& base = std::get<EquivariantMap>(pipe.base());
  std::vector<AuditReport> parts;

  CheckOptions exact;
  exact.instance = "base-permutation";
  parts.push_back(check_equivariance(base, AuditMode::sampled(opts.exact_pairs, master.derive(1)), exact));

  // Translation canonicalisation on its own, over T(3) with H trivial.
  std::string tgamma = "centroid";
  for (const auto& s : opts.stages)
    if (s.upgrade == "euclidean" || s.upgrade == "translation") tgamma = s.gamma;
  {
    const Group t3 = Group::translation(3);
    const GSet xt = cloud_gset(t3, n, 3);
    const CosetSpace cs = CosetSpace::regular(t3);
    const Homomorphism incl = cs.inclusion();
    const EquivariantMap f0 = make_map(restrict(incl, xt), restrict(incl, xt), base.fn, base.name);
    const EquivariantMap sym = symmetrize(f0, translation_gamma_for(tgamma, xt, cs), xt);
    CheckOptions o;
    o.instance = "translation-stage";
    parts.push_back(check_equivariance(sym, AuditMode::sampled(opts.exact_pairs, master.derive(2)), o));
  }

  const Model out = run_pipeline(pipe);
  const Group& g = pipe.group();
  const Exclusion exclude = any_of(stage_exclusions(pipe));
  nlohmann::json details = {{"n", n},
                            {"group", g.name()},
                            {"model", model_name(out)},
                            {"stages", nlohmann::json::array()}};
  for (const auto& s : opts.stages) details["stages"].push_back({{"upgrade", s.upgrade}, {"gamma", s.gamma}});

  CheckOptions rigid;
  rigid.instance = "pipeline-permutation-translation";
  rigid.element_sampler = rigid_free_sampler(g);
  rigid.exclude = exclude;
  if (const auto* f = std::get_if<EquivariantMap>(&out)) {
    parts.push_back(check_equivariance(*f, AuditMode::sampled(opts.exact_pairs, master.derive(3)), rigid));
    CheckOptions full;
    full.instance = "pipeline-full";
    full.exclude = exclude;
    parts.push_back(check_equivariance(*f, AuditMode::sampled(opts.exact_pairs, master.derive(4)), full));
  } else {
    const Kernel& k = std::get<Kernel>(out);
    parts.push_back(
        check_kernel_equivariance_coupled(k, AuditMode::sampled(opts.exact_pairs, master.derive(3)), rigid));
    StatisticalOptions so;
    so.instance = "pipeline-full";
    so.samples = opts.samples;
    so.pairs = opts.pairs;
    so.alpha = opts.alpha;
    so.seed = master.derive(4);
    parts.push_back(check_kernel_equivariance_statistical(k, so));
  }
  AuditReport r = combine("point-cloud", std::move(parts), seed);
  r.details = std::move(details);
  return r;
}

}  // namespace equisym

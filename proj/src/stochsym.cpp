#include "equisym/stochsym.hpp"

#include <cmath>

#include "equisym/errors.hpp"
#include "equisym/parallel.hpp"

namespace equisym {

GammaKernel deterministic_gamma(const GammaMap& gamma) {
  return {from_function(gamma.map), gamma.cs, gamma.exclusion};
}

GammaKernel haar_gamma(const CosetSpace& cs, const GSet& x) {
  const Group g = cs.group();
  if (!g.compact())
    throw UnsupportedError("Haar gamma needs a compact group; " + g.name() +
                           " has no invariant probability measure");
  if (x.group() != g) throw StructuralError("Haar gamma on a " + x.group().name() + "-set");
  const GSet cosets = coset_gset(cs);
  Sampler sampler = [cs, g](const Point&, RandomSource& rng) {
    return cs.to_point(cs.coset_of(g.haar_sample(rng)));
  };
  AtomFn atoms;
  if (cs.finite()) {
    std::vector<Atom> uniform;
    const double w = 1.0 / static_cast<double>(cs.size());
    for (const auto& c : cs.cosets()) uniform.push_back({w, cs.to_point(c)});
    atoms = [uniform](const Point&) { return uniform; };
  }
  return {make_kernel(x, cosets, sampler, std::nullopt, atoms, "haar(" + g.name() + ")"), cs, nullptr};
}

GammaKernel haar_gamma(const Group& g, const GSet& x) { return haar_gamma(CosetSpace::regular(g), x); }

AuditReport check_kernel_input(const Kernel& k, const StochOptions& opts) {
  const Group& h = k.group();
  const std::string instance = "input " + k.name;
  if (h.order() == std::optional<std::size_t>(1)) {
    AuditReport r;
    r.instance = instance;
    r.mode = "trivial";
    return r;
  }
  if (k.table && h.finite()) {
    KernelCheckOptions ko;
    ko.instance = instance;
    return check_kernel_equivariance_exact(k, ko);
  }
  if (k.exact()) {
    CheckOptions co;
    co.instance = instance;
    return check_kernel_equivariance_atoms(k, opts.spot_checks, opts.seed, co);
  }
  StatisticalOptions so;
  so.instance = instance;
  so.samples = opts.statistical_samples;
  so.pairs = opts.statistical_pairs;
  so.alpha = opts.statistical_alpha;
  so.permutations = 0;
  so.seed = opts.seed;
  return check_kernel_equivariance_statistical(k, so);
}

Kernel stochastic_symmetrize(const Kernel& k, const GammaKernel& gamma, const GSet& y,
                             const StochOptions& opts) {
  const GSet x = gamma.kernel.domain;
  const CosetSpace cs = gamma.cs;
  if (cs.group() != x.group() || cs.group() != y.group())
    throw StructuralError("G-sets over " + x.group().name() + "/" + y.group().name() +
                          " do not match coset space of " + cs.group().name());
  if (k.group() != cs.subgroup())
    throw StructuralError(k.name + " is " + k.group().name() + "-equivariant but the subgroup is " +
                          cs.subgroup().name());
  if (k.domain.carrier() != x.carrier() || k.codomain.carrier() != y.carrier())
    throw StructuralError(k.name + " does not map " + x.carrier().name() + " to " + y.carrier().name());
  if (opts.check_input) {
    const AuditReport r = check_kernel_input(k, opts);
    if (!r.pass) {
      std::string where;
      if (!r.witnesses.empty())
        where = ": g = " + r.witnesses.front().element + ", x = " + r.witnesses.front().point;
      throw IllTypedInput(k.name + " is not " + k.group().name() + "-equivariant (" + r.mode +
                          " check)" + where);
    }
  }
  const Group g = cs.group();
  auto gs = gamma.kernel.sampler;
  auto ks = k.sampler;
  Sampler sampler = [x, y, cs, g, gs, ks](const Point& p, RandomSource& rng) {
    const GroupElement s = cs.section(cs.from_point(gs(p, rng)));
    return y.act(s, ks(x.act(g.inverse(s), p), rng));
  };
  AtomFn atoms;
  if (gamma.kernel.exact() && k.exact()) {
    const Kernel gk = gamma.kernel;
    atoms = [x, y, cs, g, gk, k](const Point& p) {
      std::vector<Atom> out;
      for (const auto& c : gk.distribution(p)) {
        const GroupElement s = cs.section(cs.from_point(c.point));
        for (const auto& a : k.distribution(x.act(g.inverse(s), p)))
          out.push_back({c.weight * a.weight, y.act(s, a.point)});
      }
      return out;
    };
  }
  return make_kernel(x, y, sampler, std::nullopt, atoms, "sym(" + k.name + ")");
}

Kernel stochastic_symmetrize(const Kernel& k, const GammaKernel& gamma, const StochOptions& opts) {
  if (!k.codomain.parent())
    throw StructuralError(k.name + " codomain is not a restricted G-set; pass Y explicitly");
  return stochastic_symmetrize(k, gamma, *k.codomain.parent(), opts);
}

// ---------------------------------------------------------------------------
// averaging

namespace {

Embedding native_embedding(const GSet& y) {
  const auto kind = y.carrier().kind();
  if (kind != Carrier::Kind::vector && kind != Carrier::Kind::cloud)
    throw UnsupportedError("cannot average over " + y.carrier().name() + " without an embedding");
  return [](const Point& p) { return p.embed(); };
}

/// Inverse of Point::embed for vector and cloud carriers.
Point unembed(const Carrier& c, const Eigen::VectorXd& v) {
  if (c.kind() == Carrier::Kind::vector) return Point::from_vector(v);
  const auto rows = static_cast<Eigen::Index>(c.size());
  const Eigen::Index cols = c.dim();
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return Point::from_cloud(std::move(m));
}

std::function<Eigen::VectorXd(const Point&)> averager(const Kernel& m, const AverageMode& mode,
                                                       Embedding embed) {
  if (mode.kind == AverageMode::Kind::exact) {
    if (!m.exact())
      throw UnsupportedError("exact average of " + m.name + " needs a finite-support representation");
    return [m, embed](const Point& x) {
      Eigen::VectorXd acc;
      for (const auto& a : m.distribution(x)) {
        const Eigen::VectorXd e = embed(a.point);
        if (acc.size() == 0) acc = Eigen::VectorXd::Zero(e.size());
        acc += a.weight * e;
      }
      return acc;
    };
  }
  if (mode.samples == 0) throw InvalidArgument("Monte Carlo average needs n >= 1");
  const std::size_t n = mode.samples;
  const std::uint64_t seed = mode.seed;
  return [m, embed, n, seed](const Point& x) -> Eigen::VectorXd {
    return average_draws(m, x, n, seed, embed).colwise().mean().transpose();
  };
}

}  // namespace

Eigen::MatrixXd average_draws(const Kernel& m, const Point& x, std::size_t n, std::uint64_t seed,
                              const Embedding& embed) {
  const Embedding e = embed ? embed : native_embedding(m.codomain);
  const RandomSource master(seed);
  Eigen::MatrixXd draws;
  for (std::size_t i = 0; i < n; ++i) {
    RandomSource rng = master.split(i);
    const Eigen::VectorXd v = e(m.sample(x, rng));
    if (i == 0) draws.resize(static_cast<Eigen::Index>(n), v.size());
    draws.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return draws;
}

EquivariantMap average(const Kernel& m, const AverageMode& mode) {
  const Embedding embed = native_embedding(m.codomain);
  auto ave = averager(m, mode, embed);
  const Carrier c = m.codomain.carrier();
  return make_map(m.domain, m.codomain, [ave, c](const Point& x) { return unembed(c, ave(x)); },
                  "ave(" + m.name + ")");
}

EquivariantMap average(const Kernel& m, const AverageMode& mode, Embedding embed, const GSet& target) {
  if (!embed) throw InvalidArgument("average needs an embedding");
  if (target.carrier().kind() != Carrier::Kind::vector)
    throw StructuralError("averages land in a real-vector G-set, not " + target.carrier().name());
  auto ave = averager(m, mode, embed);
  const int d = target.carrier().dim();
  return make_map(m.domain, target,
                  [ave, d](const Point& x) {
                    const Eigen::VectorXd v = ave(x);
                    if (v.size() != d) throw StructuralError("embedding dimension does not match target");
                    return Point::from_vector(v);
                  },
                  "ave(" + m.name + ")");
}

namespace {

void require_linear(const GSet& y) {
  if (!y.linear())
    throw UnsupportedError("the action on " + y.carrier().name() +
                           " is not declared linear; the average of a symmetrised kernel need not be "
                           "equivariant");
}

}  // namespace

EquivariantMap average_symmetrized(const Kernel& k, const GammaKernel& gamma, const GSet& y,
                                   const AverageMode& mode, const StochOptions& opts) {
  require_linear(y);
  return average(stochastic_symmetrize(k, gamma, y, opts), mode);
}

EquivariantMap average_symmetrized(const Kernel& k, const GammaKernel& gamma, const GSet& y,
                                   const AverageMode& mode, Embedding embed, const GSet& target,
                                   const StochOptions& opts) {
  require_linear(y);
  return average(stochastic_symmetrize(k, gamma, y, opts), mode, std::move(embed), target);
}

AuditReport check_average_monte_carlo(const Kernel& m, const MonteCarloCheckOptions& opts) {
  if (opts.samples < 2) throw InvalidArgument("Monte Carlo check needs n >= 2");
  const Embedding embed = opts.embed ? opts.embed : native_embedding(m.codomain);
  const std::string instance = opts.instance.empty() ? "ave(" + m.name + ")" : opts.instance;
  const RandomSource master(opts.seed);
  const double root_n = std::sqrt(static_cast<double>(opts.samples));
  std::vector<Observation> obs(opts.pairs);
  nlohmann::json per_pair = nlohmann::json::array();
  std::vector<nlohmann::json> rows(opts.pairs);
  par::for_each_index(opts.pairs, [&](std::size_t i) {
    RandomSource rng = master.split(2 * i);
    const GroupElement g = opts.element_sampler ? opts.element_sampler(rng) : m.group().sample(rng);
    const Point x = opts.point_sampler ? opts.point_sampler(rng) : m.domain.sample_point(rng);
    const Point gx = m.domain.act(g, x);
    const RandomSource streams = master.split(2 * i + 1);
    Eigen::MatrixXd diff;
    for (std::size_t s = 0; s < opts.samples; ++s) {
      RandomSource u1 = streams.split(s);
      RandomSource u2 = streams.split(s);
      const Eigen::VectorXd v = embed(m.sample(gx, u1)) - embed(m.codomain.act(g, m.sample(x, u2)));
      if (s == 0) diff.resize(static_cast<Eigen::Index>(opts.samples), v.size());
      diff.row(static_cast<Eigen::Index>(s)) = v.transpose();
    }
    const Eigen::VectorXd mean = diff.colwise().mean().transpose();
    const Eigen::VectorXd sd =
        ((diff.rowwise() - mean.transpose()).array().square().colwise().sum() /
         static_cast<double>(opts.samples - 1))
            .sqrt()
            .transpose();
    // ratio |D_c| / (c sigma_c / sqrt n); a vanishing sigma allows only rounding error.
    double worst = 0.0;
    for (Eigen::Index c = 0; c < mean.size(); ++c) {
      const double bound = opts.c * sd(c) / root_n;
      const double ratio = bound > 0.0 ? std::abs(mean(c)) / bound
                                       : (std::abs(mean(c)) <= kNumericTolerance ? 0.0 : INFINITY);
      worst = std::max(worst, ratio);
    }
    obs[i].violation = worst;
    if (worst > 1.0) {
      obs[i].element = g.to_string();
      obs[i].point = x.to_string();
    }
    rows[i] = {{"max_abs_difference", mean.cwiseAbs().maxCoeff()}, {"max_sd", sd.maxCoeff()},
               {"ratio", worst}};
  });
  AuditReport r = summarize(instance, "monte-carlo", obs, 1.0, opts.seed);
  for (auto& row : rows) per_pair.push_back(std::move(row));
  r.details = {{"samples", opts.samples}, {"c", opts.c}, {"pairs", std::move(per_pair)}};
  return r;
}

}  // namespace equisym

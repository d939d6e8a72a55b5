#include "equisym/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "equisym/energy.hpp"
#include "equisym/errors.hpp"
#include "equisym/parallel.hpp"

namespace equisym {

// ---------------------------------------------------------------------------
// FiniteTable

FiniteTable::FiniteTable(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0) throw InvalidArgument("empty kernel table");
  if (!m_.allFinite()) throw InvariantViolation("kernel table has non-finite entries");
  if ((m_.array() < 0.0).any()) throw InvariantViolation("kernel table has negative entries");
  const double err = stochasticity_error();
  if (err > kProbTolerance)
    throw InvariantViolation("kernel table rows do not sum to 1 (error " + std::to_string(err) + ")");
}

double FiniteTable::stochasticity_error() const {
  return (m_.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

std::string FiniteTable::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17) << m_.rows() << "," << m_.cols() << "\n";
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = 0; j < m_.cols(); ++j) out << (j ? "," : "") << m_(i, j);
    out << "\n";
  }
  return out.str();
}

FiniteTable FiniteTable::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw InvalidArgument("empty table CSV");
  const auto header = split(line);
  if (header.size() != 2) throw InvalidArgument("table CSV header must be 'rows,cols'");
  long rows = 0, cols = 0;
  try {
    rows = std::stol(header[0]);
    cols = std::stol(header[1]);
  } catch (const std::exception&) {
    throw InvalidArgument("table CSV header must be 'rows,cols'");
  }
  if (rows <= 0 || cols <= 0) throw InvalidArgument("table CSV sizes must be positive");
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw InvalidArgument("table CSV has fewer rows than declared");
    const auto cells = split(line);
    if (static_cast<long>(cells.size()) != cols)
      throw InvalidArgument("table CSV row " + std::to_string(i) + " has " +
                            std::to_string(cells.size()) + " cells");
    for (long j = 0; j < cols; ++j) {
      try {
        m(i, j) = std::stod(cells[static_cast<std::size_t>(j)]);
      } catch (const std::exception&) {
        throw InvalidArgument("table CSV cell is not a number: " + cells[static_cast<std::size_t>(j)]);
      }
    }
  }
  return FiniteTable(std::move(m));
}

void FiniteTable::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << to_csv();
}

FiniteTable FiniteTable::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_csv(ss.str());
}

// ---------------------------------------------------------------------------
// Kernel

namespace {

bool finite_pair(const GSet& x, const GSet& y) {
  return x.carrier().enumerable() && y.carrier().enumerable();
}

Point draw_atom(const std::vector<Atom>& atoms, RandomSource& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (const auto& a : atoms) {
    acc += a.weight;
    if (u < acc) return a.point;
  }
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
    if (it->weight > 0.0) return it->point;
  throw InvariantViolation("distribution without positive mass");
}

std::vector<Atom> row_atoms(const FiniteTable& t, const Carrier& y, std::size_t row) {
  std::vector<Atom> out;
  for (std::size_t j = 0; j < t.cols(); ++j)
    if (t(row, j) > 0.0) out.push_back({t(row, j), y.point_at(j)});
  return out;
}

FiniteTable table_from_atoms(const GSet& x, const GSet& y, const AtomFn& atoms) {
  const Carrier& cx = x.carrier();
  const Carrier& cy = y.carrier();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cx.cardinality()),
                                            static_cast<Eigen::Index>(cy.cardinality()));
  for (std::size_t i = 0; i < cx.cardinality(); ++i)
    for (const auto& a : atoms(cx.point_at(i)))
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cy.index_of(a.point))) += a.weight;
  return FiniteTable(std::move(m));
}

}  // namespace

Point Kernel::sample(const Point& x, RandomSource& rng) const {
  domain.carrier().validate(x);
  return sampler(x, rng);
}

std::vector<Atom> Kernel::distribution(const Point& x) const {
  if (atoms) return atoms(x);
  if (table) return row_atoms(*table, codomain.carrier(), domain.carrier().index_of(x));
  throw UnsupportedError("kernel " + name + " has no exact representation");
}

Kernel make_kernel(GSet domain, GSet codomain, Sampler sampler, std::optional<FiniteTable> table,
                   AtomFn atoms, std::string name) {
  if (domain.group() != codomain.group())
    throw StructuralError("kernel " + name + " between G-sets over " + domain.group().name() +
                          " and " + codomain.group().name());
  if (table) {
    if (!finite_pair(domain, codomain))
      throw StructuralError("kernel " + name + " has a table but a non-finite carrier");
    if (table->rows() != domain.carrier().cardinality() ||
        table->cols() != codomain.carrier().cardinality())
      throw StructuralError("kernel " + name + " table is " + std::to_string(table->rows()) + "x" +
                            std::to_string(table->cols()) + ", carriers are " +
                            domain.carrier().name() + " -> " + codomain.carrier().name());
  } else if (atoms && finite_pair(domain, codomain)) {
    table = table_from_atoms(domain, codomain, atoms);
  }
  if (!sampler) {
    if (atoms) {
      sampler = [atoms](const Point& x, RandomSource& rng) { return draw_atom(atoms(x), rng); };
    } else if (table) {
      const FiniteTable t = *table;
      const Carrier cx = domain.carrier(), cy = codomain.carrier();
      sampler = [t, cx, cy](const Point& x, RandomSource& rng) {
        return draw_atom(row_atoms(t, cy, cx.index_of(x)), rng);
      };
    } else {
      throw InvalidArgument("kernel " + name + " needs a sampler, a table or atoms");
    }
  }
  return {std::move(domain), std::move(codomain), std::move(sampler), std::move(table),
          std::move(atoms), std::move(name)};
}

Kernel dirac(const GSet& x) {
  return make_kernel(x, x, [](const Point& p, RandomSource&) { return p; }, std::nullopt,
                     [](const Point& p) { return std::vector<Atom>{{1.0, p}}; }, "id");
}

Kernel from_function(const GSet& x, const GSet& y, std::function<Point(const Point&)> fn,
                     std::string name) {
  return make_kernel(x, y, [fn](const Point& p, RandomSource&) { return fn(p); }, std::nullopt,
                     [fn](const Point& p) { return std::vector<Atom>{{1.0, fn(p)}}; }, std::move(name));
}

Kernel from_function(const EquivariantMap& f) { return from_function(f.domain, f.codomain, f.fn, f.name); }

Kernel from_table(const GSet& x, const GSet& y, FiniteTable t, std::string name) {
  return make_kernel(x, y, nullptr, std::move(t), nullptr, std::move(name));
}

Kernel from_atoms(const GSet& x, const GSet& y, AtomFn atoms, std::string name) {
  return make_kernel(x, y, nullptr, std::nullopt, std::move(atoms), std::move(name));
}

Kernel from_sampler(const GSet& x, const GSet& y, Sampler sampler, std::string name) {
  return make_kernel(x, y, std::move(sampler), std::nullopt, nullptr, std::move(name));
}

Kernel kernel_compose(const Kernel& m, const Kernel& k) {
  if (m.domain.carrier() != k.codomain.carrier())
    throw StructuralError("cannot compose " + m.name + " after " + k.name + ": " +
                          k.codomain.carrier().name() + " vs " + m.domain.carrier().name());
  if (m.group() != k.group()) throw StructuralError("composed kernels act under different groups");
  auto ms = m.sampler;
  auto ks = k.sampler;
  Sampler sampler = [ms, ks](const Point& x, RandomSource& rng) {
    const Point y = ks(x, rng);
    return ms(y, rng);
  };
  std::optional<FiniteTable> table;
  if (m.table && k.table) table = FiniteTable(k.table->matrix() * m.table->matrix());
  AtomFn atoms;
  if (m.exact() && k.exact()) {
    atoms = [m, k](const Point& x) {
      std::vector<Atom> out;
      for (const auto& a : k.distribution(x))
        for (const auto& b : m.distribution(a.point)) out.push_back({a.weight * b.weight, b.point});
      return out;
    };
  }
  const std::string name = m.name + " o " + k.name;
  if (table) return make_kernel(k.domain, m.codomain, sampler, table, atoms, name);
  return make_kernel(k.domain, m.codomain, sampler, std::nullopt, atoms, name);
}

Distribution pushforward(const GroupElement& g, const Kernel& k, const Point& x) {
  Distribution d;
  const GSet y = k.codomain;
  auto ks = k.sampler;
  d.sampler = [g, y, ks, x](RandomSource& rng) { return y.act(g, ks(x, rng)); };
  if (k.exact()) {
    d.has_atoms = true;
    for (const auto& a : k.distribution(x)) d.atoms.push_back({a.weight, y.act(g, a.point)});
    if (y.carrier().enumerable()) {
      Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(y.carrier().cardinality()));
      for (const auto& a : d.atoms) p(static_cast<Eigen::Index>(y.carrier().index_of(a.point))) += a.weight;
      d.probs = std::move(p);
    }
  }
  return d;
}

double measure_distance(const std::vector<Atom>& a, const std::vector<Atom>& b, double location_tol) {
  auto mass_near = [location_tol](const std::vector<Atom>& atoms, const Point& p) {
    double m = 0.0;
    for (const auto& x : atoms)
      if (x.point.distance(p) <= location_tol) m += x.weight;
    return m;
  };
  double worst = 0.0;
  for (const auto* side : {&a, &b})
    for (const auto& x : *side)
      worst = std::max(worst, std::abs(mass_near(a, x.point) - mass_near(b, x.point)));
  return worst;
}

// ---------------------------------------------------------------------------
// checks

AuditReport check_kernel_equivariance_exact(const Kernel& k, const KernelCheckOptions& opts) {
  const std::string instance = opts.instance.empty() ? k.name : opts.instance;
  if (!k.table) throw UnsupportedError("exact kernel check of " + instance + " needs an exact table");
  if (!k.group().finite()) throw UnsupportedError("exact kernel check of " + instance + " needs a finite group");
  const auto elements = k.group().elements();
  const Carrier& cx = k.domain.carrier();
  const Carrier& cy = k.codomain.carrier();
  const std::size_t nx = cx.cardinality();
  const Eigen::MatrixXd& t = k.table->matrix();
  std::vector<Observation> obs(elements.size() * nx);
  par::for_each_index(obs.size(), [&](std::size_t i) {
    const GroupElement& g = elements[i / nx];
    const Point x = cx.point_at(i % nx);
    const std::size_t gx = cx.index_of(k.domain.act(g, x));
    double worst = 0.0;
    for (std::size_t y = 0; y < cy.cardinality(); ++y) {
      const std::size_t gy = cy.index_of(k.codomain.act(g, cy.point_at(y)));
      worst = std::max(worst, std::abs(t(static_cast<Eigen::Index>(gx), static_cast<Eigen::Index>(gy)) -
                                       t(static_cast<Eigen::Index>(i % nx), static_cast<Eigen::Index>(y))));
    }
    obs[i].violation = worst;
    if (worst > opts.tolerance) {
      obs[i].element = g.to_string();
      obs[i].point = x.to_string();
    }
  });
  return summarize(instance, "exact", obs, opts.tolerance, 0, opts.max_witnesses);
}

AuditReport check_kernel_equivariance_atoms(const Kernel& k, std::size_t pairs, std::uint64_t seed,
                                            const CheckOptions& opts) {
  const std::string instance = opts.instance.empty() ? k.name : opts.instance;
  if (!k.exact()) throw UnsupportedError("kernel " + instance + " has no finite-support representation");
  const RandomSource master(seed);
  std::vector<Observation> obs(pairs);
  par::for_each_index(pairs, [&](std::size_t i) {
    RandomSource rng = master.split(i);
    const GroupElement g = opts.element_sampler ? opts.element_sampler(rng) : k.group().sample(rng);
    const Point x = opts.point_sampler ? opts.point_sampler(rng) : k.domain.sample_point(rng);
    const Point gx = k.domain.act(g, x);
    if (opts.exclude && (opts.exclude(x) || opts.exclude(gx))) {
      obs[i].skipped = true;
      return;
    }
    const double v = measure_distance(k.distribution(gx), pushforward(g, k, x).atoms, opts.tolerance);
    obs[i].violation = v;
    if (v > kProbTolerance) {
      obs[i].element = g.to_string();
      obs[i].point = x.to_string();
    }
  });
  return summarize(instance, "atoms", obs, kProbTolerance, seed, opts.max_witnesses);
}

AuditReport check_kernel_equivariance_statistical(const Kernel& k, const StatisticalOptions& opts) {
  const std::string instance = opts.instance.empty() ? k.name : opts.instance;
  if (opts.samples < 2) throw InvalidArgument("statistical check needs at least 2 samples per side");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (opts.pairs == 0) throw InvalidArgument("statistical check needs at least one pair");
  auto embed = opts.embedding ? opts.embedding : [](const Point& p) { return p.embed(); };
  const double threshold = opts.alpha / static_cast<double>(opts.pairs);
  const RandomSource master(opts.seed);

  struct PairResult {
    std::string element, point;
    EnergyTestResult test;
  };
  std::vector<PairResult> results(opts.pairs);
  // Pairs run in sequence; the energy test itself is parallel.
  for (std::size_t i = 0; i < opts.pairs; ++i) {
    RandomSource rng = master.split(3 * i);
    const GroupElement g = opts.element_sampler ? opts.element_sampler(rng) : k.group().sample(rng);
    const Point x = opts.point_sampler ? opts.point_sampler(rng) : k.domain.sample_point(rng);
    const Point gx = k.domain.act(g, x);
    const RandomSource left_seed = master.split(3 * i + 1);
    const RandomSource right_seed = master.split(3 * i + 2);
    const Eigen::Index dim = embed(k.codomain.act(g, k.sample(x, rng))).size();
    Eigen::MatrixXd a(static_cast<Eigen::Index>(opts.samples), dim);
    Eigen::MatrixXd b(static_cast<Eigen::Index>(opts.samples), dim);
    par::for_each_index(opts.samples, [&](std::size_t s) {
      RandomSource ra = left_seed.split(s);
      RandomSource rb = right_seed.split(s);
      a.row(static_cast<Eigen::Index>(s)) = embed(k.sample(gx, ra)).transpose();
      b.row(static_cast<Eigen::Index>(s)) = embed(k.codomain.act(g, k.sample(x, rb))).transpose();
    });
    results[i].element = g.to_string();
    results[i].point = x.to_string();
    results[i].test = energy_test(a, b, {opts.permutations, master.derive(1000003 + i)});
  }

  AuditReport r;
  r.instance = instance;
  r.mode = "statistical";
  r.seed = opts.seed;
  r.alpha = opts.alpha;
  r.tolerance = threshold;
  r.checked = opts.pairs;
  nlohmann::json per_pair = nlohmann::json::array();
  std::vector<std::size_t> rejected;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& t = results[i].test;
    r.p_values.push_back(t.p_value);
    r.max_violation = std::max(r.max_violation, t.statistic);
    per_pair.push_back({{"statistic", t.statistic},
                        {"null_mean", t.null_mean},
                        {"null_sd", t.null_sd},
                        {"p_value", t.p_value},
                        {"p_permutation", t.p_permutation}});
    if (t.p_value <= threshold) rejected.push_back(i);
  }
  r.pass = rejected.empty();
  std::stable_sort(rejected.begin(), rejected.end(), [&](std::size_t a, std::size_t b) {
    return results[a].test.p_value < results[b].test.p_value;
  });
  for (std::size_t i : rejected)
    r.witnesses.push_back({results[i].element, results[i].point, results[i].test.statistic});
  r.details = {{"samples", opts.samples},
               {"pairs", opts.pairs},
               {"permutations", opts.permutations},
               {"bonferroni_threshold", threshold},
               {"tests", std::move(per_pair)}};
  return r;
}

AuditReport check_kernel_equivariance_coupled(const Kernel& k, const AuditMode& mode,
                                              const CheckOptions& opts) {
  const std::string instance = opts.instance.empty() ? k.name : opts.instance;
  if (mode.kind != AuditMode::Kind::sampled)
    throw UnsupportedError("coupled kernel check is sampled only");
  const RandomSource master(mode.seed);
  std::vector<Observation> obs(mode.samples);
  par::for_each_index(obs.size(), [&](std::size_t i) {
    RandomSource rng = master.split(2 * i);
    const GroupElement g = opts.element_sampler ? opts.element_sampler(rng) : k.group().sample(rng);
    const Point x = opts.point_sampler ? opts.point_sampler(rng) : k.domain.sample_point(rng);
    const Point gx = k.domain.act(g, x);
    if (opts.exclude && (opts.exclude(x) || opts.exclude(gx))) {
      obs[i].skipped = true;
      return;
    }
    RandomSource u1 = master.split(2 * i + 1);
    RandomSource u2 = master.split(2 * i + 1);
    const Point lhs = k.sample(gx, u1);
    const Point rhs = k.codomain.act(g, k.sample(x, u2));
    obs[i].violation = lhs.distance(rhs);
    if (obs[i].violation > opts.tolerance) {
      obs[i].element = g.to_string();
      obs[i].point = x.to_string();
    }
  });
  return summarize(instance, "coupled", obs, opts.tolerance, mode.seed, opts.max_witnesses);
}

AuditReport check_density_equivariance(const Kernel& k, const KernelCheckOptions& opts) {
  const std::string instance = opts.instance.empty() ? k.name : opts.instance;
  if (!k.table) throw UnsupportedError("density check of " + instance + " needs an exact table");
  if (!k.group().finite()) throw UnsupportedError("density check of " + instance + " needs a finite group");
  const auto elements = k.group().elements();
  const Carrier& cx = k.domain.carrier();
  const Carrier& cy = k.codomain.carrier();
  const std::size_t nx = cx.cardinality(), ny = cy.cardinality();
  const Eigen::MatrixXd& t = k.table->matrix();
  std::vector<Observation> obs(elements.size() * nx * ny);
  par::for_each_index(elements.size() * nx, [&](std::size_t i) {
    const GroupElement& g = elements[i / nx];
    const Point x = cx.point_at(i % nx);
    const std::size_t gx = cx.index_of(k.domain.act(g, x));
    for (std::size_t y = 0; y < ny; ++y) {
      const Point py = cy.point_at(y);
      const std::size_t gy = cy.index_of(k.codomain.act(g, py));
      Observation& o = obs[i * ny + y];
      o.violation = std::abs(t(static_cast<Eigen::Index>(gx), static_cast<Eigen::Index>(gy)) -
                             t(static_cast<Eigen::Index>(i % nx), static_cast<Eigen::Index>(y)));
      if (o.violation > opts.tolerance) {
        o.element = g.to_string();
        o.point = "(" + x.to_string() + ", " + py.to_string() + ")";
      }
    }
  });
  AuditReport r = summarize(instance, "density", obs, opts.tolerance, 0, opts.max_witnesses);
  KernelCheckOptions kopts = opts;
  kopts.instance = instance + " kernel";
  AuditReport kernel = check_kernel_equivariance_exact(k, kopts);
  r.details = {{"density_pass", r.pass},
               {"kernel_pass", kernel.pass},
               {"implication_holds", !r.pass || kernel.pass}};
  r.checks.push_back(std::move(kernel));
  return r;
}

}  // namespace equisym

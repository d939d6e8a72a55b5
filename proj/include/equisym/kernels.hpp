#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "equisym/actions.hpp"
#include "equisym/audit.hpp"
#include "equisym/detsym.hpp"

namespace equisym {

/// Tolerance for exact-table arithmetic.
inline constexpr double kProbTolerance = 1e-12;

/// One atom of a finitely supported distribution.
struct Atom {
  double weight = 0.0;
  Point point;
};

using Sampler = std::function<Point(const Point&, RandomSource&)>;
/// Finite support of k(.|x); weights sum to 1.
using AtomFn = std::function<std::vector<Atom>(const Point&)>;

/// Row-stochastic |X| x |Y| matrix; row x is k(.|x).
class FiniteTable {
 public:
  explicit FiniteTable(Eigen::MatrixXd m);

  const Eigen::MatrixXd& matrix() const { return m_; }
  std::size_t rows() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(m_.cols()); }
  double operator()(std::size_t x, std::size_t y) const {
    return m_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }

  /// Largest |row sum - 1| and whether any entry is negative.
  double stochasticity_error() const;

  /// First line "rows,cols", then one comma-separated row per line.
  std::string to_csv() const;
  static FiniteTable from_csv(const std::string& text);
  void write_csv(const std::string& path) const;
  static FiniteTable read_csv(const std::string& path);

 private:
  Eigen::MatrixXd m_;
};

/// A stochastic map X -> Y: a sampler plus optional exact representations.
struct Kernel {
  GSet domain;
  GSet codomain;
  Sampler sampler;
  std::optional<FiniteTable> table;
  AtomFn atoms;
  std::string name = "k";

  const Group& group() const { return domain.group(); }
  Point sample(const Point& x, RandomSource& rng) const;
  bool exact() const { return table.has_value() || static_cast<bool>(atoms); }
  /// Exact distribution of k(.|x) from the atoms or the table.  Throws UnsupportedError if
  /// neither is available.
  std::vector<Atom> distribution(const Point& x) const;
};

/// Builds a kernel; derives a table from atoms when both carriers are enumerable, and a
/// sampler from the table or atoms when none is given.
Kernel make_kernel(GSet domain, GSet codomain, Sampler sampler, std::optional<FiniteTable> table,
                   AtomFn atoms, std::string name = "k");

Kernel dirac(const GSet& x);
Kernel from_function(const EquivariantMap& f);
Kernel from_function(const GSet& x, const GSet& y, std::function<Point(const Point&)> fn,
                     std::string name = "f");
Kernel from_table(const GSet& x, const GSet& y, FiniteTable t, std::string name = "k");
Kernel from_atoms(const GSet& x, const GSet& y, AtomFn atoms, std::string name = "k");
Kernel from_sampler(const GSet& x, const GSet& y, Sampler sampler, std::string name = "k");

/// m o k: sample Y ~ k(.|x) then Z ~ m(.|Y).  Tables multiply; atoms combine.
Kernel kernel_compose(const Kernel& m, const Kernel& k);

/// Law of g . Y for Y ~ k(.|x).
struct Distribution {
  /// Finite codomains with an exact representation: probabilities by point index.
  std::optional<Eigen::VectorXd> probs;
  std::vector<Atom> atoms;
  bool has_atoms = false;
  std::function<Point(RandomSource&)> sampler;
};
Distribution pushforward(const GroupElement& g, const Kernel& k, const Point& x);

/// Largest difference between two finitely supported measures: over every atom location,
/// the difference in mass within `location_tol` of it.
double measure_distance(const std::vector<Atom>& a, const std::vector<Atom>& b,
                        double location_tol = kNumericTolerance);

struct KernelCheckOptions {
  double tolerance = kProbTolerance;
  std::size_t max_witnesses = 10;
  std::string instance;
};

/// All (g, x): rows k(.|g.x) and g.k(.|x) agree within tolerance.  Needs a finite group,
/// enumerable carriers and an exact table.
AuditReport check_kernel_equivariance_exact(const Kernel& k, const KernelCheckOptions& opts = {});

/// Sampled (g, x) pairs compared through the finite-support representation.
AuditReport check_kernel_equivariance_atoms(const Kernel& k, std::size_t pairs, std::uint64_t seed,
                                            const CheckOptions& opts = {});

struct StatisticalOptions {
  std::size_t samples = 5000;
  double alpha = 0.01;
  std::size_t pairs = 20;
  std::size_t permutations = 200;
  std::uint64_t seed = 0;
  std::string instance;
  std::function<GroupElement(RandomSource&)> element_sampler;
  std::function<Point(RandomSource&)> point_sampler;
  /// Real embedding of codomain points; defaults to Point::embed.
  std::function<Eigen::VectorXd(const Point&)> embedding;
};

/// Per sampled (g, x): energy-distance test between draws of k(.|g.x) and g . draws of
/// k(.|x).  Passes iff no pair rejects at alpha / pairs (Bonferroni).
AuditReport check_kernel_equivariance_statistical(const Kernel& k, const StatisticalOptions& opts);

/// Common-random-numbers check: k(g.x; u) = g.k(x; u) for the same random stream u.  A
/// sufficient, not necessary, condition for equivariance in distribution.
AuditReport check_kernel_equivariance_coupled(const Kernel& k, const AuditMode& mode,
                                              const CheckOptions& opts = {});

/// p(g.y | g.x) = p(y | x) for all g, x, y.  The report passes iff the density condition
/// holds; it also carries the kernel check as a sub-report and records in
/// details["implication_holds"] whether density => kernel equivariance held.
AuditReport check_density_equivariance(const Kernel& k, const KernelCheckOptions& opts = {});

}  // namespace equisym

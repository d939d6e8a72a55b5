#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "equisym/detsym.hpp"
#include "equisym/kernels.hpp"

namespace equisym {

/// G-equivariant kernel X -> G/H.
struct GammaKernel {
  Kernel kernel;
  CosetSpace cs;
  Exclusion exclusion;
};

/// A deterministic gamma as a point-mass kernel.
GammaKernel deterministic_gamma(const GammaMap& gamma);
/// H trivial: gamma ignores x and returns a Haar-distributed element of G.
GammaKernel haar_gamma(const Group& g, const GSet& x);
/// Image of the Haar measure of G in G/H: uniform over cosets for finite G.
GammaKernel haar_gamma(const CosetSpace& cs, const GSet& x);

struct StochOptions {
  bool check_input = true;
  /// (g, x) pairs for the input check when it cannot be exhaustive.
  std::size_t spot_checks = 32;
  std::uint64_t seed = 0x5eed;
  /// Sample size and level of the statistical input check used for sampler-only kernels.
  std::size_t statistical_samples = 300;
  std::size_t statistical_pairs = 4;
  double statistical_alpha = 1e-3;
};

/// C ~ gamma(.|x), G = s(C), Y ~ k(.|G^-1 . x), return G . Y.  Exact tables and atoms are
/// propagated when gamma and k have them: sym(k)(y|x) = sum_c gamma(c|x) k(s(c)^-1 y | s(c)^-1 x).
Kernel stochastic_symmetrize(const Kernel& k, const GammaKernel& gamma, const GSet& y,
                             const StochOptions& opts = {});
/// Y taken from the restricted codomain of k.
Kernel stochastic_symmetrize(const Kernel& k, const GammaKernel& gamma, const StochOptions& opts = {});

/// Checks H-equivariance of k: exact on tables, through atoms, or statistically.
AuditReport check_kernel_input(const Kernel& k, const StochOptions& opts);

struct AverageMode {
  enum class Kind { exact, monte_carlo } kind = Kind::exact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static AverageMode exact() { return {}; }
  static AverageMode monte_carlo(std::size_t n, std::uint64_t seed) {
    return {Kind::monte_carlo, n, seed};
  }
};

using Embedding = std::function<Eigen::VectorXd(const Point&)>;

/// ave(m)(x) = E[Y], Y ~ m(.|x), for a real-vector codomain.  Monte Carlo mode draws the
/// same n random streams for every x.
EquivariantMap average(const Kernel& m, const AverageMode& mode);
/// Finite or other codomains: outcomes embedded into the real vectors of `target`.
EquivariantMap average(const Kernel& m, const AverageMode& mode, Embedding embed, const GSet& target);

/// average(stochastic_symmetrize(k, gamma, y)).  Refuses (UnsupportedError) unless the
/// codomain action is declared linear.
EquivariantMap average_symmetrized(const Kernel& k, const GammaKernel& gamma, const GSet& y,
                                   const AverageMode& mode, const StochOptions& opts = {});
EquivariantMap average_symmetrized(const Kernel& k, const GammaKernel& gamma, const GSet& y,
                                   const AverageMode& mode, Embedding embed, const GSet& target,
                                   const StochOptions& opts = {});

/// The n embedded Monte Carlo draws behind average(m, monte_carlo(n, seed)) at x (one per row).
Eigen::MatrixXd average_draws(const Kernel& m, const Point& x, std::size_t n, std::uint64_t seed,
                              const Embedding& embed = nullptr);

struct MonteCarloCheckOptions {
  std::size_t samples = 10000;
  std::size_t pairs = 20;
  std::uint64_t seed = 0;
  double c = 5.0;
  std::string instance;
  Embedding embed;
  std::function<GroupElement(RandomSource&)> element_sampler;
  std::function<Point(RandomSource&)> point_sampler;
};

/// Monte Carlo average of m against its own equivariance: for sampled (g, x), with the same
/// draws on both sides, D = ave(g.x) - g.ave(x) must satisfy |D_c| <= c sigma_c / sqrt(n) per
/// coordinate, sigma estimated from the per-draw differences.  The codomain action must be
/// linear in the embedding, so that g.ave = ave of g.draws.
AuditReport check_average_monte_carlo(const Kernel& m, const MonteCarloCheckOptions& opts);

}  // namespace equisym

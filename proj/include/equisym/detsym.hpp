#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "equisym/actions.hpp"
#include "equisym/audit.hpp"
#include "equisym/cosets.hpp"
#include "equisym/groups.hpp"
#include "equisym/points.hpp"

namespace equisym {

/// Measure-zero set of inputs excluded from equivariance checks (gamma discontinuities).
using Exclusion = std::function<bool(const Point&)>;

/// A function between G-sets declared equivariant for domain.group().
struct EquivariantMap {
  GSet domain;
  GSet codomain;
  std::function<Point(const Point&)> fn;
  std::string name;

  const Group& group() const { return domain.group(); }
  Point operator()(const Point& x) const;
};

EquivariantMap make_map(GSet domain, GSet codomain, std::function<Point(const Point&)> fn,
                        std::string name = "f");

/// Equivariant gamma: X -> G/H.
struct GammaMap {
  EquivariantMap map;
  CosetSpace cs;
  /// Points where gamma is discontinuous or breaks ties; excluded from sampled audits.
  Exclusion exclusion;

  Coset operator()(const Point& x) const { return cs.from_point(map(x)); }
};

GammaMap make_gamma(const GSet& domain, const CosetSpace& cs,
                    std::function<Coset(const Point&)> gamma, std::string name = "gamma",
                    Exclusion exclusion = nullptr);

/// The element of `g` that translates by `t` (a translation(d) or euclidean(d) factor) and is
/// the identity on every other factor; empty if `g` has no such factor.
std::optional<GroupElement> translation_in(const Group& g, const Eigen::VectorXd& t);
/// Same for an orthogonal(d) factor.
std::optional<GroupElement> orthogonal_in(const Group& g, const Eigen::MatrixXd& q);

/// C2 negation on R^1: [e] for x >= 0, [g] for x < 0.  Ties at 0 go to [e]; 0 is excluded.
GammaMap sign_gamma();
/// T(d) on R^d with H trivial: x -> [translation by x].
GammaMap translation_gamma(int d);
/// Point clouds: the coset of translation by the centroid.  `cs` must be T(d)/{e},
/// E(d)/O(d), or a product of one of these with a full quotient of the other factor.
GammaMap centroid_gamma(const GSet& clouds, const CosetSpace& cs);
/// O(d) on point clouds with H trivial: frame of eigenvectors of sum_i x_i x_i^T in
/// descending eigenvalue order; each axis is signed so the third moment of the projections
/// is positive.  Near-degenerate spectra and vanishing third moments are excluded.
GammaMap pca_frame_gamma(const GSet& clouds, const CosetSpace& cs);
/// H = G: every point to the single coset.
GammaMap constant_gamma(const GSet& x, const CosetSpace& cs);
/// Finite X: choose per orbit a point x0 and coset c0 with Stab(x0) <= Stab(c0) and set
/// gamma(g x0) = g c0.  Throws UnsupportedError if some orbit admits no such coset.
GammaMap orbit_gamma(const GSet& x, const CosetSpace& cs);

struct SymOptions {
  /// Spot-check the H-equivariance of the input.
  bool check_input = true;
  std::size_t spot_checks = 64;
  std::uint64_t seed = 0x5eed;
  double tolerance = kNumericTolerance;
  Exclusion exclude;
};

/// f#([g], x) = s([g]) . f(s([g])^-1 . x) as a G-map G/H (x) X -> Y.  X and Y are the
/// G-sets whose restrictions f is equivariant for.
EquivariantMap sharp(const EquivariantMap& f, const CosetSpace& cs, const GSet& x, const GSet& y,
                     const SymOptions& opts = {});
/// As above with X and Y taken from the restricted domain/codomain of f.
EquivariantMap sharp(const EquivariantMap& f, const CosetSpace& cs, const SymOptions& opts = {});
/// g . f(g^-1 . x) for an arbitrary group element g.
Point sharp_via(const EquivariantMap& f, const GSet& x, const GSet& y, const GroupElement& g,
                const Point& p);

/// Inverse of sharp: x -> h([e], x) on the restricted G-sets.
EquivariantMap flat(const EquivariantMap& h, const CosetSpace& cs);

/// x -> f#(gamma(x), x)
EquivariantMap precompose(const EquivariantMap& fsharp, const GammaMap& gamma);

/// x -> h(x) . f(h(x)^-1 . x) with h = s o gamma.
EquivariantMap symmetrize(const EquivariantMap& f, const GammaMap& gamma, const GSet& y,
                          const SymOptions& opts = {});
EquivariantMap symmetrize(const EquivariantMap& f, const GammaMap& gamma,
                          const SymOptions& opts = {});

struct AuditMode {
  enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static AuditMode exhaustive() { return {}; }
  static AuditMode sampled(std::size_t n, std::uint64_t seed) { return {Kind::sampled, n, seed}; }
};

struct CheckOptions {
  double tolerance = kNumericTolerance;
  Exclusion exclude;
  std::size_t max_witnesses = 10;
  std::string instance;
  /// Overrides group sampling in sampled mode.
  std::function<GroupElement(RandomSource&)> element_sampler;
  /// Overrides point sampling in sampled mode.
  std::function<Point(RandomSource&)> point_sampler;
};

/// Max over (g, x) of d(f(g.x), g.f(x)).  Exhaustive mode needs a finite group and an
/// enumerable carrier.
AuditReport check_equivariance(const EquivariantMap& f, const AuditMode& mode,
                               const CheckOptions& opts = {});
/// Same check over explicit element and point lists (all pairs).
AuditReport check_equivariance_on(const EquivariantMap& f, const std::vector<GroupElement>& elements,
                                  const std::vector<Point>& points, const CheckOptions& opts = {});

/// Max pointwise distance between two maps on the given points.
double max_difference(const EquivariantMap& a, const EquivariantMap& b,
                      const std::vector<Point>& points);

/// Find the first H-equivariance failure of f under its own domain/codomain actions.
/// Used by sharp/symmetrize; exposed for audits.
AuditReport check_input_equivariance(const EquivariantMap& f, const SymOptions& opts);

}  // namespace equisym

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "equisym/detsym.hpp"
#include "equisym/kernels.hpp"
#include "equisym/stochsym.hpp"

namespace equisym {

/// A deterministic or stochastic model.
using Model = std::variant<EquivariantMap, Kernel>;

const Group& model_group(const Model& m);
const GSet& model_domain(const Model& m);
const GSet& model_codomain(const Model& m);
const std::string& model_name(const Model& m);

enum class StageKind { deterministic, stochastic };

/// One upgrade H -> G along phi.  `x` and `y` are the G-sets of the stage output; the stage
/// input must be equivariant for restrict(phi, x) -> restrict(phi, y).
struct SymStage {
  Homomorphism phi;
  std::variant<GammaMap, GammaKernel> gamma;
  CosetSpace cs;
  GSet x;
  GSet y;
  StageKind kind = StageKind::deterministic;
  std::string name;
};

const CosetSpace& gamma_cosets(const std::variant<GammaMap, GammaKernel>& gamma);

/// Base model followed by stages.  `build` checks that the chain is well typed.
class SymPipeline {
 public:
  static SymPipeline build(Model base, std::vector<SymStage> stages);

  const Model& base() const { return base_; }
  const std::vector<SymStage>& stages() const { return stages_; }
  /// Equivariance group of the pipeline output.
  const Group& group() const;

 private:
  SymPipeline(Model base, std::vector<SymStage> stages) : base_(std::move(base)), stages_(std::move(stages)) {}
  Model base_;
  std::vector<SymStage> stages_;
};

struct AlongOptions {
  SymOptions det;
  StochOptions stoch;
};

/// Symmetrise `model` along phi.  phi must be injective and agree with cs.inclusion(); the
/// model is reinterpreted on restrict(phi, x) -> restrict(phi, y).  Deterministic models with
/// a GammaMap go through detsym; everything else through stochastic_symmetrize.
Model symmetrize_along(const Homomorphism& phi, const Model& model,
                       const std::variant<GammaMap, GammaKernel>& gamma, const CosetSpace& cs,
                       const GSet& x, const GSet& y, const AlongOptions& opts = {});
Model symmetrize_along(const SymStage& stage, const Model& model, const AlongOptions& opts = {});

Model run_pipeline(const SymPipeline& p, const AlongOptions& opts = {});

// ---------------------------------------------------------------------------
// point-cloud demonstration

/// One upgrade of a point-cloud pipeline.
///   orthogonal:  S_n -> O(3) x S_n, gamma "haar" (stochastic) or "pca" (deterministic)
///   euclidean:   O(3) x S_n -> E(3) x S_n, gamma "centroid" or "first-point"
///   translation: S_n -> T(3) x S_n, gamma "centroid" or "first-point"
struct CloudStageSpec {
  std::string upgrade;
  std::string gamma;
};

struct PointCloudDemoOptions {
  std::vector<CloudStageSpec> stages = {{"orthogonal", "haar"}, {"euclidean", "centroid"}};
  /// Statistical audit.
  std::size_t samples = 5000;
  std::size_t pairs = 20;
  double alpha = 0.01;
  /// Sampled pairs for the exact (1e-9) audits.
  std::size_t exact_pairs = 100;
};

/// f(X)_i = tanh(A x_i + b) + C mean_j x_j with weights fixed by `seed`: S_n-equivariant,
/// neither rotation nor translation equivariant.
EquivariantMap point_cloud_base(int n, std::uint64_t seed);

/// Pipeline over point-cloud(n, 3) from the stage list.  Throws StructuralError for chains
/// that do not compose.
SymPipeline point_cloud_pipeline(int n, std::uint64_t seed, const PointCloudDemoOptions& opts = {});

/// Builds and runs the pipeline and audits it: the base under S_n, the translation
/// canonicalisation alone, pathwise checks under permutations and translations (1e-9),
/// and either a sampled 1e-9 audit (deterministic output) or the statistical test over the
/// full group (stochastic output).
AuditReport demo_point_cloud(int n, std::uint64_t seed, const PointCloudDemoOptions& opts = {});

/// Sampler for the elements of a group with every orthogonal part replaced by the identity.
std::function<GroupElement(RandomSource&)> rigid_free_sampler(const Group& g);

}  // namespace equisym

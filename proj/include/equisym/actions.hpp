#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "equisym/cosets.hpp"
#include "equisym/groups.hpp"
#include "equisym/points.hpp"
#include "equisym/random.hpp"

namespace equisym {

/// Underlying set of a G-set.
class Carrier {
 public:
  enum class Kind { finite, vector, cloud, cosets, pair };

  static Carrier finite_set(std::size_t n);
  static Carrier real_vector(int d);
  static Carrier point_cloud(int points, int dims);
  /// Cosets of a continuous coset space; points hold representatives.
  static Carrier cosets();
  static Carrier pair(Carrier a, Carrier b);

  Kind kind() const { return kind_; }
  /// finite: number of elements; cloud: number of points.
  std::size_t size() const { return size_; }
  /// vector / cloud: coordinate dimension.
  int dim() const { return dim_; }
  const Carrier& first() const { return parts_.at(0); }
  const Carrier& second() const { return parts_.at(1); }

  /// Finite sets and products of finite sets.
  bool enumerable() const;
  std::size_t cardinality() const;
  /// All points in index order; pair (a, b) has index a * |second| + b.
  std::vector<Point> points() const;
  std::size_t index_of(const Point& p) const;
  Point point_at(std::size_t i) const;

  void validate(const Point& p) const;
  bool operator==(const Carrier& other) const;
  bool operator!=(const Carrier& other) const { return !(*this == other); }

  std::string name() const;
  nlohmann::json to_json() const;
  static Carrier from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::finite;
  std::size_t size_ = 0;
  int dim_ = 0;
  std::vector<Carrier> parts_;
};

using Action = std::function<Point(const GroupElement&, const Point&)>;
using PointSampler = std::function<Point(RandomSource&)>;

/// A carrier with a group action.  Immutable; copies share structure.
class GSet {
 public:
  GSet(Group group, Carrier carrier, Action action, bool linear = false, std::string name = "");

  const Group& group() const { return state_->group; }
  const Carrier& carrier() const { return state_->carrier; }
  /// Declared linear action (permutations, orthogonal matrices, sign flips).
  bool linear() const { return state_->linear; }
  const std::string& name() const { return state_->name; }

  /// alpha(g, x); validates both arguments.
  Point act(const GroupElement& g, const Point& x) const;
  /// Random test point; defaults depend on the carrier.
  Point sample_point(RandomSource& rng) const;
  GSet with_sampler(PointSampler sampler) const;
  GSet renamed(std::string name) const;

  /// Factors of a product G-set.
  const GSet* first() const { return state_->first.get(); }
  const GSet* second() const { return state_->second.get(); }
  /// The G-set this one was restricted from, with the homomorphism used.
  const GSet* parent() const { return state_->parent.get(); }
  const Homomorphism* restriction() const {
    return state_->restriction ? &*state_->restriction : nullptr;
  }
  /// Coset space of a coset G-set.
  const CosetSpace* coset_space() const {
    return state_->cosets ? &*state_->cosets : nullptr;
  }

 private:
  struct State {
    Group group;
    Carrier carrier;
    Action action;
    bool linear = false;
    std::string name;
    PointSampler sampler;
    std::shared_ptr<const GSet> first, second, parent;
    std::optional<Homomorphism> restriction;
    std::optional<CosetSpace> cosets;
  };
  explicit GSet(std::shared_ptr<State> s) : state_(std::move(s)) {}

  std::shared_ptr<const State> state_;

  friend GSet product(const GSet& x, const GSet& y);
  friend GSet restrict(const Homomorphism& phi, const GSet& x);
  friend GSet coset_gset(const CosetSpace& cs);
};

inline Point act(const GSet& x, const GroupElement& g, const Point& p) { return x.act(g, p); }

/// X (x) Y with the diagonal action g.(x, y) = (g.x, g.y).
GSet product(const GSet& x, const GSet& y);
/// R_phi X: same carrier, h acts as phi(h).
GSet restrict(const Homomorphism& phi, const GSet& x);
GSet trivial_gset(const Group& g, const Carrier& c);
/// G/H with g.[g'] = [g g'].
GSet coset_gset(const CosetSpace& cs);

/// S_n, C_n (rotation i -> i + k) or D_n (polygon vertices) on {0..n-1}.
GSet natural_gset(const Group& g);
/// A finite group acting on itself (as {0..|G|-1}) by left multiplication.
GSet regular_gset(const Group& g);
/// Finite action given by table[g_index][x] = g.x.
GSet table_gset(const Group& g, std::size_t n, std::vector<std::vector<std::size_t>> table,
                std::string name = "table");

/// C2 on R^d by x -> -x.
GSet negation_gset(int d);
/// Linear action x -> rho(g) x for orthogonal groups, or C_n / D_n as planar rotations
/// and reflections.
GSet matrix_gset(const Group& g, int d);
/// T(d) on R^d by x -> x + t.
GSet translation_gset(int d);
/// E(d) on R^d by x -> Qx + t.
GSet euclidean_gset(int d);
/// Point clouds: permutations act on rows, O(d)/SO(d)/T(d)/E(d) act on each row's
/// coordinates, products act diagonally.
GSet cloud_gset(const Group& g, int points, int dims);
/// Matrix of g in the planar or orthogonal representation used by matrix_gset.
Eigen::MatrixXd representation_matrix(const Group& g, const GroupElement& e, int d);

/// Dispatch to one of the constructors above by name ("natural", "regular", "trivial",
/// "negation", "matrix", "translation", "euclidean", "cloud").
GSet standard_gset(const Group& g, const Carrier& c, const std::string& action);

}  // namespace equisym

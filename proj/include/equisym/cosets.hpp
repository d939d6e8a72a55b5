#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "equisym/groups.hpp"
#include "equisym/points.hpp"

namespace equisym {

/// A left coset gH, identified by its canonical representative.  `id` indexes
/// CosetSpace::cosets() for finite spaces and is 0 otherwise.
struct Coset {
  std::size_t id = 0;
  GroupElement representative;
};

/// The G-set G/H of left cosets together with the section s([g]) = canonical representative.
///
/// Finite spaces are enumerated by brute-force partition and use the smallest element index
/// of each coset as its representative.  Continuous spaces come from the dedicated
/// constructors below.
class CosetSpace {
 public:
  /// Left cosets of the image of `inclusion` in the finite group `group`.
  static CosetSpace enumerate(const Group& group, const Homomorphism& inclusion);
  /// G/{e}; cosets are group elements.
  static CosetSpace regular(const Group& group);
  /// G/G; a single coset with representative e.
  static CosetSpace singleton(const Group& group);
  /// E(d)/O(d); coset (Q, t)O(d) has representative (I, t).
  static CosetSpace euclidean_over_orthogonal(int d);
  /// (G1 x G2)/(H1 x H2) = G1/H1 x G2/H2.
  static CosetSpace product(const CosetSpace& a, const CosetSpace& b);

  const Group& group() const { return state_->group; }
  const Group& subgroup() const { return state_->inclusion.source; }
  const Homomorphism& inclusion() const { return state_->inclusion; }

  bool finite() const { return state_->finite; }
  /// Number of cosets (finite spaces only).
  std::size_t size() const;
  const std::vector<Coset>& cosets() const;
  const Coset& coset(std::size_t id) const;
  /// Group elements of a coset (finite spaces only).
  std::vector<GroupElement> members(const Coset& c) const;

  Coset coset_of(const GroupElement& g) const;
  GroupElement section(const Coset& c) const { return c.representative; }
  /// g . [g'] = [g g']
  Coset act(const GroupElement& g, const Coset& c) const;
  bool same(const Coset& a, const Coset& b) const;

  Point to_point(const Coset& c) const;
  Coset from_point(const Point& p) const;

 private:
  struct State {
    Group group = Group::trivial();
    Homomorphism inclusion;
    bool finite = false;
    // finite
    std::vector<std::size_t> coset_of_element;
    std::vector<Coset> cosets;
    // continuous: g -> canonical representative of [g]
    std::function<GroupElement(const GroupElement&)> canonical;
  };

  explicit CosetSpace(std::shared_ptr<const State> s) : state_(std::move(s)) {}

  std::shared_ptr<const State> state_;
};

/// Free-function spelling used throughout the library.
inline CosetSpace coset_space(const Group& g, const Homomorphism& inclusion) {
  return CosetSpace::enumerate(g, inclusion);
}

}  // namespace equisym

#include "equisym/cosets.hpp"

#include <limits>

#include "equisym/errors.hpp"

namespace equisym {

namespace {
constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
}

CosetSpace CosetSpace::enumerate(const Group& group, const Homomorphism& inclusion) {
  if (inclusion.target != group)
    throw StructuralError("inclusion targets " + inclusion.target.name() + ", not " +
                          group.name());
  if (!group.finite() || !inclusion.source.finite())
    throw UnsupportedError("coset enumeration needs finite groups; use a dedicated constructor "
                           "for " + group.name());
  const std::size_t n = *group.order();

  std::vector<std::size_t> image;
  std::vector<bool> hit(n, false);
  for (const auto& h : inclusion.source.elements()) {
    const std::size_t idx = group.index_of(inclusion(h));
    if (hit[idx])
      throw InvalidInclusion(inclusion.name + " is not injective: two elements map to " +
                             group.element(idx).to_string());
    hit[idx] = true;
    image.push_back(idx);
  }

  auto state = std::make_shared<State>();
  state->group = group;
  state->inclusion = inclusion;
  state->finite = true;
  state->coset_of_element.assign(n, kUnassigned);
  const auto elements = group.elements();
  for (std::size_t g = 0; g < n; ++g) {
    if (state->coset_of_element[g] != kUnassigned) continue;
    const std::size_t id = state->cosets.size();
    state->cosets.push_back({id, elements[g]});
    for (std::size_t h : image) {
      const std::size_t member = group.index_of(group.compose(elements[g], elements[h]));
      if (state->coset_of_element[member] != kUnassigned)
        throw InvalidInclusion("image of " + inclusion.name + " is not a subgroup");
      state->coset_of_element[member] = id;
    }
  }
  return CosetSpace(std::move(state));
}

CosetSpace CosetSpace::regular(const Group& group) {
  const Homomorphism incl = standard_inclusion(Group::trivial(), group);
  if (group.finite()) return enumerate(group, incl);
  auto state = std::make_shared<State>();
  state->group = group;
  state->inclusion = incl;
  state->canonical = [](const GroupElement& g) { return g; };
  return CosetSpace(std::move(state));
}

CosetSpace CosetSpace::singleton(const Group& group) {
  const Homomorphism incl = identity_hom(group);
  if (group.finite()) return enumerate(group, incl);
  auto state = std::make_shared<State>();
  state->group = group;
  state->inclusion = incl;
  auto e = group.identity();
  state->canonical = [e](const GroupElement&) { return e; };
  return CosetSpace(std::move(state));
}

CosetSpace CosetSpace::euclidean_over_orthogonal(int d) {
  auto state = std::make_shared<State>();
  state->group = Group::euclidean(d);
  state->inclusion = standard_inclusion(Group::orthogonal(d), state->group);
  state->canonical = [d](const GroupElement& g) {
    return GroupElement::from_euclidean(Eigen::MatrixXd::Identity(d, d), g.translation());
  };
  return CosetSpace(std::move(state));
}

CosetSpace CosetSpace::product(const CosetSpace& a, const CosetSpace& b) {
  const Group g = Group::product(a.group(), b.group());
  const Homomorphism incl = product_hom(a.inclusion(), b.inclusion());
  if (a.finite() && b.finite()) return enumerate(g, incl);
  auto state = std::make_shared<State>();
  state->group = g;
  state->inclusion = incl;
  state->canonical = [a, b](const GroupElement& x) {
    return GroupElement::from_pair(a.coset_of(x.first()).representative,
                                   b.coset_of(x.second()).representative);
  };
  return CosetSpace(std::move(state));
}

std::size_t CosetSpace::size() const {
  if (!finite()) throw UnsupportedError("G/H of " + group().name() + " is not enumerable");
  return state_->cosets.size();
}

const std::vector<Coset>& CosetSpace::cosets() const {
  if (!finite()) throw UnsupportedError("G/H of " + group().name() + " is not enumerable");
  return state_->cosets;
}

const Coset& CosetSpace::coset(std::size_t id) const {
  const auto& all = cosets();
  if (id >= all.size()) throw StructuralError("coset id out of range");
  return all[id];
}

std::vector<GroupElement> CosetSpace::members(const Coset& c) const {
  if (!finite()) throw UnsupportedError("continuous cosets have no member list");
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < state_->coset_of_element.size(); ++i)
    if (state_->coset_of_element[i] == c.id) out.push_back(group().element(i));
  return out;
}

Coset CosetSpace::coset_of(const GroupElement& g) const {
  group().validate(g);
  if (finite()) return state_->cosets[state_->coset_of_element[group().index_of(g)]];
  return {0, state_->canonical(g)};
}

Coset CosetSpace::act(const GroupElement& g, const Coset& c) const {
  return coset_of(group().compose(g, c.representative));
}

bool CosetSpace::same(const Coset& a, const Coset& b) const {
  if (finite()) return a.id == b.id;
  return a.representative.distance(b.representative) <= kNumericTolerance;
}

Point CosetSpace::to_point(const Coset& c) const {
  if (finite()) return Point::from_index(c.id);
  return Point::from_element(c.representative);
}

Coset CosetSpace::from_point(const Point& p) const {
  if (finite()) {
    if (p.kind() != Point::Kind::index) throw StructuralError("finite coset points are indices");
    return coset(p.index());
  }
  if (p.kind() != Point::Kind::element)
    throw StructuralError("continuous coset points carry a representative");
  return coset_of(p.element());
}

}  // namespace equisym

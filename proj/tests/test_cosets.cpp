#include <gtest/gtest.h>

#include <set>

#include "equisym/actions.hpp"
#include "equisym/cosets.hpp"
#include "equisym/errors.hpp"
#include "test_support.hpp"

using namespace equisym;

namespace {

struct Instance {
  Group g;
  Homomorphism incl;
};

std::vector<Instance> instances() {
  const Group s3 = Group::symmetric(3), c4 = Group::cyclic(4), d4 = Group::dihedral(4);
  const Group c2c3 = Group::product(Group::cyclic(2), Group::cyclic(3));
  return {{s3, standard_inclusion(Group::symmetric(2), s3)},
          {c4, standard_inclusion(Group::cyclic(2), c4)},
          {d4, standard_inclusion(Group::cyclic(4), d4)},
          {c2c3, hom_inject_left(Group::cyclic(2), Group::cyclic(3))},
          {s3, identity_hom(s3)},
          {s3, standard_inclusion(Group::trivial(), s3)}};
}

std::set<std::set<std::size_t>> as_partition(const CosetSpace& cs) {
  std::set<std::set<std::size_t>> out;
  for (const auto& c : cs.cosets()) {
    std::set<std::size_t> cls;
    for (const auto& m : cs.members(c)) cls.insert(cs.group().index_of(m));
    out.insert(cls);
  }
  return out;
}

}  // namespace

TEST(CosetSpace, S3OverS2HasThreeCosets) {
  const Group s3 = Group::symmetric(3);
  const CosetSpace cs = coset_space(s3, standard_inclusion(Group::symmetric(2), s3));
  EXPECT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs.size() * 2, *s3.order());
  EXPECT_EQ(oracle::brute_force_cosets(s3, cs.inclusion()).size(), 3u);
}

TEST(CosetSpace, C4OverEvenRotations) {
  const Group c4 = Group::cyclic(4);
  const CosetSpace cs = coset_space(c4, standard_inclusion(Group::cyclic(2), c4));
  ASSERT_EQ(cs.size(), 2u);
  const std::set<std::set<std::size_t>> expected = {{0, 2}, {1, 3}};
  EXPECT_EQ(as_partition(cs), expected);
}

TEST(CosetSpace, FullSubgroupGivesOneCoset) {
  for (const Group& g : {Group::symmetric(3), Group::dihedral(3), Group::cyclic(5)})
    EXPECT_EQ(CosetSpace::singleton(g).size(), 1u);
}

TEST(CosetSpace, MatchesBruteForcePartition) {
  for (const auto& [g, incl] : instances()) {
    const CosetSpace cs = coset_space(g, incl);
    std::set<std::set<std::size_t>> expected;
    for (const auto& cls : oracle::brute_force_cosets(g, incl)) expected.insert({cls.begin(), cls.end()});
    EXPECT_EQ(as_partition(cs), expected) << g.name();
    EXPECT_EQ(cs.size() * *incl.source.order(), *g.order()) << "Lagrange for " << g.name();
  }
}

TEST(CosetSpace, SectionIsMinimalIndexMember) {
  for (const auto& [g, incl] : instances()) {
    const CosetSpace cs = coset_space(g, incl);
    for (const auto& c : cs.cosets()) {
      std::size_t min_index = *g.order();
      for (const auto& m : cs.members(c)) min_index = std::min(min_index, g.index_of(m));
      EXPECT_EQ(g.index_of(cs.section(c)), min_index);
      EXPECT_EQ(cs.coset_of(cs.section(c)).id, c.id);
    }
  }
}

TEST(CosetOf, Examples) {
  const Group c4 = Group::cyclic(4);
  const CosetSpace cs = coset_space(c4, standard_inclusion(Group::cyclic(2), c4));
  EXPECT_EQ(cs.coset_of(GroupElement::from_index(3)).id, cs.coset_of(GroupElement::from_index(1)).id);
  EXPECT_EQ(cs.coset_of(c4.identity()).id, cs.coset_of(GroupElement::from_index(2)).id);

  const Group s3 = Group::symmetric(3);
  const CosetSpace q = coset_space(s3, standard_inclusion(Group::symmetric(2), s3));
  EXPECT_EQ(q.coset_of(GroupElement::from_permutation({1, 0, 2})).id, q.coset_of(s3.identity()).id);
  EXPECT_NE(q.coset_of(GroupElement::from_permutation({0, 2, 1})).id, q.coset_of(s3.identity()).id);
}

TEST(CosetOf, RelationMatchesMembership) {
  for (const auto& [g, incl] : instances()) {
    const CosetSpace cs = coset_space(g, incl);
    std::set<std::size_t> image;
    for (const auto& h : incl.source.elements()) image.insert(g.index_of(incl(h)));
    for (const auto& a : g.elements())
      for (const auto& b : g.elements()) {
        const bool related = image.count(g.index_of(g.compose(g.inverse(a), b))) > 0;
        EXPECT_EQ(cs.coset_of(a).id == cs.coset_of(b).id, related);
      }
  }
}

TEST(CosetOf, ForeignElementIsStructural) {
  const Group c4 = Group::cyclic(4);
  const CosetSpace cs = coset_space(c4, standard_inclusion(Group::cyclic(2), c4));
  EXPECT_THROW(cs.coset_of(GroupElement::from_permutation({1, 0})), StructuralError);
}

TEST(CosetAct, Examples) {
  const Group c4 = Group::cyclic(4);
  const CosetSpace cs = coset_space(c4, standard_inclusion(Group::cyclic(2), c4));
  const Coset c0 = cs.coset_of(GroupElement::from_index(0));
  EXPECT_EQ(cs.act(c4.identity(), c0).id, c0.id);
  const Coset moved = cs.act(GroupElement::from_index(1), c0);
  EXPECT_EQ(moved.id, cs.coset_of(c4.compose(GroupElement::from_index(1), GroupElement::from_index(0))).id);
  EXPECT_EQ(moved.id, cs.coset_of(GroupElement::from_index(1)).id);
}

TEST(CosetAct, AxiomsAndSectionConsistency) {
  for (const auto& [g, incl] : instances()) {
    const CosetSpace cs = coset_space(g, incl);
    for (const auto& c : cs.cosets()) {
      EXPECT_EQ(cs.act(g.identity(), c).id, c.id);
      for (const auto& a : g.elements()) {
        EXPECT_EQ(cs.coset_of(g.compose(a, cs.section(c))).id, cs.act(a, c).id);
        for (const auto& b : g.elements())
          EXPECT_EQ(cs.act(g.compose(a, b), c).id, cs.act(a, cs.act(b, c)).id);
      }
    }
  }
}

TEST(CosetSpace, NonInjectiveInclusionIsRejected) {
  EXPECT_THROW(coset_space(Group::cyclic(4), trivial_hom(Group::cyclic(2), Group::cyclic(4))), InvalidInclusion);
  EXPECT_THROW(coset_space(Group::symmetric(3), trivial_hom(Group::symmetric(3), Group::symmetric(3))),
               InvalidInclusion);
}

TEST(CosetSpace, InfiniteGroupNeedsDedicatedConstructor) {
  EXPECT_THROW(coset_space(Group::orthogonal(2), identity_hom(Group::orthogonal(2))), UnsupportedError);
}

TEST(CosetSpace, EuclideanOverOrthogonal) {
  const CosetSpace cs = CosetSpace::euclidean_over_orthogonal(3);
  const Group e3 = cs.group();
  RandomSource rng(2);
  for (int k = 0; k < 50; ++k) {
    const GroupElement a = e3.sample(rng), b = e3.sample(rng);
    const Coset ca = cs.coset_of(a);
    // (Q, t) O(3) is determined by t, and its representative is (I, t).
    EXPECT_LE((ca.representative.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((ca.representative.translation() - a.translation()).cwiseAbs().maxCoeff(), 1e-12);
    const GroupElement ab = e3.compose(a, b);
    EXPECT_TRUE(cs.same(cs.act(a, cs.coset_of(b)), cs.coset_of(ab)));
    // a^-1 (a h) in O(3) for any h in O(3).
    const GroupElement h = GroupElement::from_euclidean(random_orthogonal(3, rng), Eigen::Vector3d::Zero());
    EXPECT_TRUE(cs.same(cs.coset_of(a), cs.coset_of(e3.compose(a, h))));
  }
}

TEST(CosetSpace, ProductOfQuotients) {
  const Group s3 = Group::symmetric(3);
  const CosetSpace a = CosetSpace::regular(Group::cyclic(2));
  const CosetSpace b = coset_space(s3, standard_inclusion(Group::symmetric(2), s3));
  const CosetSpace p = CosetSpace::product(a, b);
  EXPECT_TRUE(p.finite());
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(p.size() * *p.subgroup().order(), *p.group().order());
}

TEST(CosetGSet, IsoToCosetAction) {
  const Group c4 = Group::cyclic(4);
  const CosetSpace cs = coset_space(c4, standard_inclusion(Group::cyclic(2), c4));
  const GSet x = coset_gset(cs);
  ASSERT_EQ(x.carrier().cardinality(), 2u);
  for (const auto& g : c4.elements())
    for (const auto& c : cs.cosets())
      EXPECT_EQ(x.act(g, cs.to_point(c)).index(), cs.act(g, c).id);
}

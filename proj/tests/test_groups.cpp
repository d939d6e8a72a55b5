#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "equisym/errors.hpp"
#include "equisym/groups.hpp"
#include "test_support.hpp"

using namespace equisym;

namespace {

std::vector<Group> finite_groups() {
  return {Group::cyclic(4), Group::symmetric(3), Group::dihedral(4),
          Group::product(Group::cyclic(2), Group::cyclic(3)), Group::trivial()};
}

std::vector<Group> continuous_groups() {
  return {Group::orthogonal(3), Group::special_orthogonal(3), Group::orthogonal(2),
          Group::translation(2), Group::euclidean(2), Group::euclidean(3),
          Group::product(Group::orthogonal(3), Group::symmetric(4))};
}

}  // namespace

TEST(Compose, CyclicAddsModN) {
  const Group c4 = Group::cyclic(4);
  EXPECT_EQ(c4.compose(GroupElement::from_index(1), GroupElement::from_index(2)).index(), 3u);
  EXPECT_EQ(c4.compose(GroupElement::from_index(3), GroupElement::from_index(1)).index(), 0u);
}

TEST(Compose, SymmetricMatchesPointwiseComposition) {
  const Group s3 = Group::symmetric(3);
  const std::vector<int> t01 = {1, 0, 2}, t12 = {0, 2, 1};
  const GroupElement ab = s3.compose(GroupElement::from_permutation(t01), GroupElement::from_permutation(t12));
  EXPECT_EQ(ab.permutation(), oracle::compose_perm(t01, t12));
  // Applying (1 2) first and then (0 1): 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0.
  EXPECT_EQ(ab.permutation(), (std::vector<int>{1, 2, 0}));
}

TEST(Compose, KindMismatchIsStructural) {
  EXPECT_THROW(Group::cyclic(4).compose(GroupElement::from_index(1), GroupElement::from_permutation({1, 0})),
               StructuralError);
  EXPECT_THROW(Group::symmetric(3).compose(GroupElement::from_permutation({1, 0}),
                                           GroupElement::from_permutation({0, 1, 2})),
               StructuralError);
}

TEST(Inverse, Examples) {
  EXPECT_EQ(Group::cyclic(4).inverse(GroupElement::from_index(3)).index(), 1u);
  const Group o2 = Group::orthogonal(2);
  const GroupElement r = GroupElement::from_matrix(oracle::rot2(0.7));
  EXPECT_LE((o2.inverse(r).matrix() - oracle::rot2(-0.7)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Inverse, EuclideanSemidirect) {
  const Group e2 = Group::euclidean(2);
  const Eigen::Matrix2d q = oracle::rot2(1.1);
  const Eigen::Vector2d t(0.3, -2.0);
  const GroupElement g = GroupElement::from_euclidean(q, t);
  const GroupElement inv = e2.inverse(g);
  EXPECT_LE((inv.matrix() - q.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((inv.translation() - (-q.transpose() * t)).cwiseAbs().maxCoeff(), 1e-12);
  // (Q, t)(Q^T, -Q^T t) = (Q Q^T, Q(-Q^T t) + t) = (I, 0), multiplied out by hand.
  const Eigen::Matrix2d qq = q * inv.matrix();
  const Eigen::Vector2d tt = q * inv.translation() + t;
  EXPECT_LE((qq - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(tt.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Inverse, NonOrthogonalPayloadIsRejected) {
  Eigen::Matrix2d m;
  m << 2, 0, 0, 1;
  EXPECT_THROW(Group::orthogonal(2).inverse(GroupElement::from_matrix(m)), InvariantViolation);
  EXPECT_THROW(Group::symmetric(3).inverse(GroupElement::from_permutation({0, 0, 1})), InvariantViolation);
}

TEST(Axioms, ExhaustiveOnFiniteGroups) {
  for (const Group& g : finite_groups()) {
    const auto el = g.elements();
    ASSERT_EQ(el.size(), *g.order()) << g.name();
    for (std::size_t i = 0; i < el.size(); ++i) {
      EXPECT_EQ(g.index_of(el[i]), i);
      for (std::size_t j = 0; j < el.size(); ++j)
        if (i != j) EXPECT_FALSE(g.equal(el[i], el[j])) << g.name();
    }
    const GroupElement e = g.identity();
    for (const auto& a : el) {
      EXPECT_TRUE(g.equal(g.compose(e, a), a));
      EXPECT_TRUE(g.equal(g.compose(a, e), a));
      EXPECT_TRUE(g.equal(g.compose(a, g.inverse(a)), e));
      EXPECT_TRUE(g.equal(g.compose(g.inverse(a), a), e));
      for (const auto& b : el)
        for (const auto& c : el)
          EXPECT_TRUE(g.equal(g.compose(g.compose(a, b), c), g.compose(a, g.compose(b, c)))) << g.name();
    }
  }
}

TEST(Axioms, SampledOnContinuousGroups) {
  RandomSource rng(11);
  for (const Group& g : continuous_groups()) {
    const GroupElement e = g.identity();
    for (int k = 0; k < 100; ++k) {
      const GroupElement a = g.sample(rng), b = g.sample(rng), c = g.sample(rng);
      EXPECT_LE(g.compose(g.compose(a, b), c).distance(g.compose(a, g.compose(b, c))), 1e-9) << g.name();
      EXPECT_LE(g.compose(e, a).distance(a), 1e-9);
      EXPECT_LE(g.compose(a, e).distance(a), 1e-9);
      EXPECT_LE(g.compose(a, g.inverse(a)).distance(e), 1e-9);
      EXPECT_LE(g.compose(g.inverse(a), a).distance(e), 1e-9);
    }
  }
}

TEST(Dihedral, ReflectionsSquareToIdentity) {
  const Group d5 = Group::dihedral(5);
  ASSERT_EQ(*d5.order(), 10u);
  for (std::size_t a = 0; a < 5; ++a) {
    const GroupElement s = GroupElement::from_index(a + 5);
    EXPECT_EQ(d5.compose(s, s).index(), 0u);
  }
  // s r s = r^-1
  const GroupElement r = GroupElement::from_index(1), s = GroupElement::from_index(5);
  EXPECT_EQ(d5.compose(s, d5.compose(r, s)).index(), 4u);
}

TEST(Haar, CyclicFrequencies) {
  const Group c4 = Group::cyclic(4);
  RandomSource rng(5);
  std::vector<std::size_t> counts(4, 0);
  for (int i = 0; i < 40000; ++i) ++counts[c4.haar_sample(rng).index()];
  for (auto c : counts) {
    EXPECT_GE(c / 40000.0, 0.24);
    EXPECT_LE(c / 40000.0, 0.26);
  }
  EXPECT_TRUE(oracle::chi_squared_consistent(counts, std::vector<double>(4, 0.25), 0.01));
}

TEST(Haar, SymmetricFrequencies) {
  const Group s3 = Group::symmetric(3);
  RandomSource rng(6);
  std::vector<std::size_t> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[s3.index_of(s3.haar_sample(rng))];
  for (auto c : counts) EXPECT_NEAR(c / 60000.0, 1.0 / 6.0, 0.01);
  EXPECT_TRUE(oracle::chi_squared_consistent(counts, std::vector<double>(6, 1.0 / 6.0), 0.01));
}

TEST(Haar, FiniteGroupsPassChiSquared) {
  RandomSource rng(8);
  for (const Group& g : finite_groups()) {
    const std::size_t n = *g.order();
    if (n == 1) continue;
    std::vector<std::size_t> counts(n, 0);
    for (std::size_t i = 0; i < 10000 * n; ++i) ++counts[g.index_of(g.haar_sample(rng))];
    EXPECT_TRUE(oracle::chi_squared_consistent(counts, std::vector<double>(n, 1.0 / n), 0.01)) << g.name();
  }
}

TEST(Haar, SpecialOrthogonal3HasZeroMeanAction) {
  const Group so3 = Group::special_orthogonal(3);
  RandomSource rng(9);
  const Eigen::Vector3d v = Eigen::Vector3d(1, 2, -1).normalized();
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const GroupElement r = so3.haar_sample(rng);
    ASSERT_NEAR(r.matrix().determinant(), 1.0, 1e-9);
    mean += r.matrix() * v;
  }
  EXPECT_LE((mean / n).norm(), 0.02);
}

TEST(Haar, OrthogonalCoversBothComponents) {
  const Group o3 = Group::orthogonal(3);
  RandomSource rng(10);
  int negative = 0;
  Eigen::Matrix3d mean = Eigen::Matrix3d::Zero();
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd q = o3.haar_sample(rng).matrix();
    negative += q.determinant() < 0;
    mean += q;
  }
  EXPECT_NEAR(negative / double(n), 0.5, 0.02);
  // E[Q] = 0 for Haar O(3): each entry has variance 1/3, so 5 sd of the mean is 0.02.
  EXPECT_LE((mean / n).cwiseAbs().maxCoeff(), 0.02);
}

TEST(Haar, NoncompactGroupsAreUnsupported) {
  RandomSource rng(1);
  EXPECT_THROW(Group::translation(2).haar_sample(rng), UnsupportedError);
  EXPECT_THROW(Group::euclidean(3).haar_sample(rng), UnsupportedError);
  EXPECT_THROW(Group::product(Group::cyclic(2), Group::translation(1)).haar_sample(rng), UnsupportedError);
}

TEST(Homomorphisms, InjectLeft) {
  const Group k = Group::cyclic(3), h = Group::cyclic(2);
  const Homomorphism phi = hom_inject_left(k, h);
  EXPECT_EQ(phi.kind, HomomorphismKind::left_factor_injection);
  const GroupElement e = phi(h.identity());
  EXPECT_EQ(e.first().index(), 0u);
  EXPECT_EQ(e.second().index(), 0u);
  const GroupElement one = phi(GroupElement::from_index(1));
  EXPECT_EQ(one.first().index(), 0u);
  EXPECT_EQ(one.second().index(), 1u);
  const Group kh = phi.target;
  for (const auto& a : h.elements())
    for (const auto& b : h.elements()) EXPECT_TRUE(kh.equal(phi(h.compose(a, b)), kh.compose(phi(a), phi(b))));
}

TEST(Homomorphisms, StandardInclusionsSatisfyTheLaw) {
  RandomSource rng(3);
  const std::vector<std::pair<Group, Group>> pairs = {
      {Group::symmetric(2), Group::symmetric(3)},
      {Group::cyclic(2), Group::cyclic(4)},
      {Group::cyclic(4), Group::dihedral(4)},
      {Group::orthogonal(3), Group::euclidean(3)},
      {Group::translation(3), Group::euclidean(3)},
      {Group::special_orthogonal(3), Group::orthogonal(3)},
      {Group::trivial(), Group::symmetric(4)},
      {Group::product(Group::cyclic(2), Group::symmetric(2)), Group::product(Group::cyclic(4), Group::symmetric(3))}};
  for (const auto& [sub, g] : pairs) {
    const Homomorphism phi = standard_inclusion(sub, g);
    EXPECT_TRUE(phi.injective);
    EXPECT_LE(homomorphism_violation(phi, rng), 1e-9) << phi.name;
  }
  EXPECT_LE(homomorphism_violation(trivial_hom(Group::symmetric(3), Group::cyclic(4)), rng), 0.0);
  EXPECT_THROW(standard_inclusion(Group::cyclic(3), Group::cyclic(4)), Error);
}

TEST(Homomorphisms, ViolationDetectsBrokenMaps) {
  RandomSource rng(4);
  const Group c4 = Group::cyclic(4);
  Homomorphism bad{c4, c4, [](const GroupElement& a) { return GroupElement::from_index((a.index() + 1) % 4); },
                   HomomorphismKind::custom, true, "shift"};
  EXPECT_GT(homomorphism_violation(bad, rng), 0.0);
}

TEST(Serialisation, RoundTrip) {
  for (const Group& g : finite_groups()) EXPECT_EQ(Group::from_json(g.to_json()), g);
  for (const Group& g : continuous_groups()) EXPECT_EQ(Group::from_json(g.to_json()), g);
  EXPECT_EQ(Group::from_json(nlohmann::json::parse(R"({"kind":"symmetric","n":3})")), Group::symmetric(3));
  EXPECT_THROW(Group::from_json(nlohmann::json::parse(R"({"kind":"bogus"})")), InvalidArgument);
}

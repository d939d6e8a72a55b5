#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "equisym/actions.hpp"
#include "equisym/errors.hpp"
#include "test_support.hpp"

using namespace equisym;

namespace {

// C2 x C3 acting faithfully on {0..5} by addition through (a, b) -> 3a + 4b mod 6.
GSet z6_action() {
  const Group g = Group::product(Group::cyclic(2), Group::cyclic(3));
  std::vector<std::vector<std::size_t>> table;
  for (const auto& e : g.elements()) {
    const std::size_t shift = (3 * e.first().index() + 4 * e.second().index()) % 6;
    std::vector<std::size_t> row(6);
    for (std::size_t i = 0; i < 6; ++i) row[i] = (i + shift) % 6;
    table.push_back(row);
  }
  return table_gset(g, 6, table, "Z6");
}

void expect_action_axioms(const GSet& x) {
  const Group& g = x.group();
  for (const auto& p : x.carrier().points()) {
    EXPECT_EQ(x.act(g.identity(), p).distance(p), 0.0) << x.name();
    for (const auto& a : g.elements())
      for (const auto& b : g.elements())
        EXPECT_EQ(x.act(g.compose(a, b), p).distance(x.act(a, x.act(b, p))), 0.0) << x.name();
  }
}

}  // namespace

TEST(Act, NegationOnReals) {
  const GSet x = negation_gset(1);
  EXPECT_DOUBLE_EQ(x.act(GroupElement::from_index(1), Point::scalar(2.0)).vector()(0), -2.0);
  EXPECT_DOUBLE_EQ(x.act(GroupElement::from_index(0), Point::scalar(2.0)).vector()(0), 2.0);
}

TEST(Act, PermutationReindexesCloudRows) {
  const GSet x = cloud_gset(Group::symmetric(3), 3, 2);
  Eigen::MatrixXd rows(3, 2);
  rows << 1, 2, 3, 4, 5, 6;
  const std::vector<int> sigma = {2, 0, 1};
  const Eigen::MatrixXd out = x.act(GroupElement::from_permutation(sigma), Point::from_cloud(rows)).coords();
  // Row i of the input lands in row sigma(i).
  for (int i = 0; i < 3; ++i) EXPECT_EQ(out.row(sigma[static_cast<std::size_t>(i)]), rows.row(i));
}

TEST(Act, EuclideanOnPlane) {
  const GSet x = euclidean_gset(2);
  const GroupElement g = GroupElement::from_euclidean(oracle::rot2(std::numbers::pi / 2), Eigen::Vector2d(1, 0));
  const Eigen::VectorXd y = x.act(g, Point::from_vector(Eigen::Vector2d(1, 0))).vector();
  EXPECT_NEAR(y(0), 1.0, 1e-12);
  EXPECT_NEAR(y(1), 1.0, 1e-12);
}

TEST(Act, DimensionMismatchIsStructural) {
  EXPECT_THROW(negation_gset(2).act(GroupElement::from_index(1), Point::scalar(1.0)), StructuralError);
  EXPECT_THROW(natural_gset(Group::symmetric(3)).act(GroupElement::from_permutation({0, 1, 2}), Point::from_index(3)),
               StructuralError);
  EXPECT_THROW(negation_gset(1).act(GroupElement::from_permutation({1, 0}), Point::scalar(1.0)), StructuralError);
}

TEST(Product, Componentwise) {
  const GSet x = negation_gset(1);
  const GSet xx = product(x, x);
  const Point p = xx.act(GroupElement::from_index(1), Point::from_pair(Point::scalar(1.0), Point::scalar(-3.0)));
  EXPECT_DOUBLE_EQ(p.first().vector()(0), -1.0);
  EXPECT_DOUBLE_EQ(p.second().vector()(0), 3.0);
  EXPECT_TRUE(xx.linear());
}

TEST(Product, FiniteExhaustive) {
  const Group s3 = Group::symmetric(3);
  const GSet a = natural_gset(s3), b = regular_gset(s3);
  const GSet ab = product(a, b);
  ASSERT_EQ(ab.carrier().cardinality(), 18u);
  for (const auto& g : s3.elements())
    for (const auto& p : ab.carrier().points()) {
      const Point q = ab.act(g, p);
      EXPECT_EQ(q.first().index(), a.act(g, p.first()).index());
      EXPECT_EQ(q.second().index(), b.act(g, p.second()).index());
    }
  expect_action_axioms(ab);
}

TEST(Product, GroupMismatchIsStructural) {
  EXPECT_THROW(product(negation_gset(1), natural_gset(Group::symmetric(3))), StructuralError);
}

TEST(Restrict, InclusionAgreesWithOriginal) {
  const Group s3 = Group::symmetric(3), s2 = Group::symmetric(2);
  const Homomorphism incl = standard_inclusion(s2, s3);
  const GSet x = natural_gset(s3);
  const GSet r = restrict(incl, x);
  EXPECT_EQ(r.group(), s2);
  for (const auto& h : s2.elements())
    for (const auto& p : x.carrier().points()) EXPECT_EQ(r.act(h, p).index(), x.act(incl(h), p).index());
  expect_action_axioms(r);
}

TEST(Restrict, TrivialHomomorphismGivesTrivialAction) {
  const Group s3 = Group::symmetric(3);
  const GSet r = restrict(trivial_hom(Group::cyclic(4), s3), natural_gset(s3));
  for (const auto& h : Group::cyclic(4).elements())
    for (const auto& p : r.carrier().points()) EXPECT_EQ(r.act(h, p).index(), p.index());
}

TEST(Restrict, InjectLeftUsesOnlyTheRightComponent) {
  const GSet x = z6_action();
  const Homomorphism phi = hom_inject_left(Group::cyclic(2), Group::cyclic(3));
  const GSet r = restrict(phi, x);
  for (const auto& h : Group::cyclic(3).elements())
    for (std::size_t i = 0; i < 6; ++i)
      EXPECT_EQ(r.act(h, Point::from_index(i)).index(), (i + 4 * h.index()) % 6);
  expect_action_axioms(r);
}

TEST(Restrict, TargetMismatchIsStructural) {
  EXPECT_THROW(restrict(standard_inclusion(Group::symmetric(2), Group::symmetric(3)), natural_gset(Group::cyclic(3))),
               StructuralError);
}

TEST(TrivialGSet, FixesEveryPoint) {
  const GSet x = trivial_gset(Group::symmetric(3), Carrier::finite_set(6));
  for (const auto& g : Group::symmetric(3).elements()) EXPECT_EQ(x.act(g, Point::from_index(5)).index(), 5u);
}

TEST(Axioms, FiniteGSets) {
  expect_action_axioms(natural_gset(Group::symmetric(3)));
  expect_action_axioms(natural_gset(Group::cyclic(5)));
  expect_action_axioms(natural_gset(Group::dihedral(4)));
  expect_action_axioms(regular_gset(Group::dihedral(3)));
  expect_action_axioms(z6_action());
  const Group c4 = Group::cyclic(4);
  expect_action_axioms(coset_gset(coset_space(c4, standard_inclusion(Group::cyclic(2), c4))));
}

TEST(Axioms, ContinuousGSetsSampled) {
  RandomSource rng(21);
  const std::vector<GSet> sets = {matrix_gset(Group::orthogonal(3), 3), translation_gset(2), euclidean_gset(3),
                                  cloud_gset(Group::product(Group::euclidean(3), Group::symmetric(4)), 4, 3),
                                  matrix_gset(Group::dihedral(5), 2)};
  for (const GSet& x : sets) {
    const Group& g = x.group();
    for (int k = 0; k < 100; ++k) {
      const GroupElement a = g.sample(rng), b = g.sample(rng);
      const Point p = x.sample_point(rng);
      EXPECT_LE(x.act(g.identity(), p).distance(p), 1e-9) << x.name();
      EXPECT_LE(x.act(g.compose(a, b), p).distance(x.act(a, x.act(b, p))), 1e-9) << x.name();
    }
  }
}

TEST(CosetGSet, CarrierMatchesSpace) {
  const Group s3 = Group::symmetric(3);
  const CosetSpace cs = coset_space(s3, standard_inclusion(Group::symmetric(2), s3));
  const GSet x = coset_gset(cs);
  EXPECT_EQ(x.carrier(), Carrier::finite_set(3));
  ASSERT_NE(x.coset_space(), nullptr);
  EXPECT_EQ(coset_gset(CosetSpace::euclidean_over_orthogonal(3)).carrier().kind(), Carrier::Kind::cosets);
}

TEST(Linearity, DeclaredOnStandardActions) {
  EXPECT_TRUE(negation_gset(2).linear());
  EXPECT_TRUE(matrix_gset(Group::orthogonal(3), 3).linear());
  EXPECT_TRUE(cloud_gset(Group::symmetric(3), 3, 2).linear());
  EXPECT_FALSE(translation_gset(2).linear());
  EXPECT_FALSE(cloud_gset(Group::euclidean(3), 3, 3).linear());
}

TEST(Carrier, JsonRoundTrip) {
  for (const Carrier& c : {Carrier::finite_set(4), Carrier::real_vector(3), Carrier::point_cloud(5, 3),
                           Carrier::pair(Carrier::finite_set(2), Carrier::real_vector(1))})
    EXPECT_EQ(Carrier::from_json(c.to_json()), c);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "equisym/energy.hpp"
#include "equisym/errors.hpp"
#include "equisym/random.hpp"

using namespace equisym;

namespace {

Eigen::MatrixXd gaussian(std::size_t n, int d, RandomSource& rng, double shift = 0.0) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), d);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal() + (j == 0 ? shift : 0.0);
  return m;
}

}  // namespace

TEST(RelabelMoments, MatchEnumerationOverAllBalancedLabellings) {
  RandomSource rng(1);
  for (std::size_t np : {4u, 6u, 8u, 10u}) {
    Eigen::MatrixXd pts = gaussian(np, 2, rng);
    Eigen::MatrixXd d(np, np);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
    double total = 0, squares = 0, row_squares = 0;
    for (std::size_t i = 0; i < np; ++i) {
      double r = 0;
      for (std::size_t j = 0; j < np; ++j)
        if (i != j) {
          r += d(i, j);
          squares += d(i, j) * d(i, j);
        }
      total += r;
      row_squares += r * r;
    }
    // Brute force over every labelling with np/2 entries +1.
    std::vector<int> z(np, -1);
    std::fill(z.begin(), z.begin() + static_cast<long>(np / 2), 1);
    std::sort(z.begin(), z.end());
    double s1 = 0, s2 = 0;
    std::size_t count = 0;
    do {
      double q = 0;
      for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j)
          if (i != j) q += d(i, j) * z[i] * z[j];
      s1 += q;
      s2 += q * q;
      ++count;
    } while (std::next_permutation(z.begin(), z.end()));
    const double mean = s1 / count, var = s2 / count - mean * mean;
    const RelabelMoments m = relabel_moments(total, squares, row_squares, np);
    EXPECT_NEAR(m.mean, mean, 1e-9 * std::abs(mean) + 1e-9) << np;
    EXPECT_NEAR(m.variance, var, 1e-8 * var + 1e-9) << np;
  }
}

TEST(GammaTail, ExponentialSpecialCase) {
  // mean 2, variance 4: shape 1, scale 2, so the tail is exp(-w / 2).
  for (double w : {0.1, 1.0, 3.0, 10.0}) EXPECT_NEAR(gamma_tail(w, 2.0, 4.0), std::exp(-w / 2.0), 1e-12);
  EXPECT_EQ(gamma_tail(-1.0, 2.0, 4.0), 1.0);
  EXPECT_EQ(gamma_tail(5.0, 2.0, 0.0), 0.0);
  EXPECT_EQ(gamma_tail(1.0, 2.0, 0.0), 1.0);
}

TEST(EnergyTest, StatisticIsEnergyDistance) {
  RandomSource rng(2);
  const Eigen::MatrixXd a = gaussian(40, 3, rng), b = gaussian(40, 3, rng, 0.5);
  const EnergyTestResult r = energy_test(a, b, {50, 1});
  EXPECT_NEAR(r.statistic, energy_distance(a, b), 1e-12);
  EXPECT_EQ(r.n, 40u);
}

TEST(EnergyTest, ParallelMatchesSerialReference) {
  RandomSource rng(3);
  for (std::size_t n : {10u, 129u, 300u}) {
    const Eigen::MatrixXd a = gaussian(n, 4, rng), b = gaussian(n, 4, rng, 0.1);
    const EnergyTestResult s = energy_test_serial(a, b, {100, 7});
    const EnergyTestResult p = energy_test(a, b, {100, 7});
    EXPECT_NEAR(p.statistic, s.statistic, 1e-10 * std::max(1.0, std::abs(s.statistic)));
    EXPECT_NEAR(p.null_mean, s.null_mean, 1e-10 * std::abs(s.null_mean));
    EXPECT_NEAR(p.null_sd, s.null_sd, 1e-8 * s.null_sd);
    EXPECT_NEAR(p.p_value, s.p_value, 1e-8);
    // Single-precision replicates may flip an exact tie.
    EXPECT_NEAR(p.p_permutation, s.p_permutation, 2.0 / 101.0);
  }
}

TEST(EnergyTest, PermutationMomentsMatchReplicates) {
  RandomSource rng(4);
  const Eigen::MatrixXd a = gaussian(50, 2, rng), b = gaussian(50, 2, rng);
  const EnergyTestResult r = energy_test_serial(a, b, {2000, 9});
  // The permutation p-value and the gamma tail approximate the same null law.
  EXPECT_NEAR(r.p_value, r.p_permutation, 0.05);
}

TEST(EnergyTest, CalibratedUnderTheNull) {
  RandomSource rng(5);
  const int reps = 400;
  int reject = 0;
  std::vector<double> ps;
  for (int k = 0; k < reps; ++k) {
    const Eigen::MatrixXd a = gaussian(60, 3, rng), b = gaussian(60, 3, rng);
    const double p = energy_test(a, b, {0, 0}).p_value;
    ps.push_back(p);
    reject += p <= 0.05;
  }
  // Binomial(400, 0.05) has sd 4.4; accept within 3.5 sd of the nominal 20.
  EXPECT_GE(reject, 5);
  EXPECT_LE(reject, 35);
  EXPECT_NEAR(std::accumulate(ps.begin(), ps.end(), 0.0) / reps, 0.5, 0.05);
}

TEST(EnergyTest, DetectsLocationAndScaleShifts) {
  RandomSource rng(6);
  const Eigen::MatrixXd a = gaussian(500, 3, rng), b = gaussian(500, 3, rng, 0.4);
  EXPECT_LT(energy_test(a, b, {200, 1}).p_value, 1e-6);
  Eigen::MatrixXd c = gaussian(500, 3, rng);
  c.col(1) *= 1.6;
  EXPECT_LT(energy_test(a, c, {200, 1}).p_value, 1e-6);
}

TEST(EnergyTest, IdenticalSamplesDoNotReject) {
  RandomSource rng(7);
  const Eigen::MatrixXd a = gaussian(30, 2, rng);
  EXPECT_GT(energy_test(a, a, {100, 1}).p_value, 0.5);
  const Eigen::MatrixXd pt = Eigen::MatrixXd::Ones(20, 3);
  const EnergyTestResult r = energy_test(pt, pt, {100, 1});
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.statistic, 0.0);
}

TEST(EnergyTest, RejectsBadInput) {
  RandomSource rng(8);
  EXPECT_THROW(energy_test(gaussian(5, 2, rng), gaussian(6, 2, rng)), InvalidArgument);
  EXPECT_THROW(energy_test(gaussian(5, 2, rng), gaussian(5, 3, rng)), InvalidArgument);
  EXPECT_THROW(energy_test(gaussian(1, 2, rng), gaussian(1, 2, rng)), InvalidArgument);
}

TEST(EnergyTest, Reproducible) {
  RandomSource rng(9);
  const Eigen::MatrixXd a = gaussian(100, 3, rng), b = gaussian(100, 3, rng);
  const EnergyTestResult x = energy_test(a, b, {100, 42}), y = energy_test(a, b, {100, 42});
  EXPECT_EQ(x.p_permutation, y.p_permutation);
  EXPECT_EQ(x.p_value, y.p_value);
}

#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace equisym {

struct EnergyTestOptions {
  std::size_t permutations = 200;
  std::uint64_t seed = 0;
};

/// Two-sample energy-distance test between equally sized samples (one observation per row).
///
/// The statistic is the V-statistic 2 E|A-B| - E|A-A'| - E|B-B'|.  Under the null the
/// pooled sample is exchangeable; `p_value` is a gamma approximation to the permutation
/// distribution matched to its exact first two moments, `p_permutation` the Monte Carlo
/// permutation p-value (1 + #{W_b >= W}) / (B + 1).
struct EnergyTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double p_permutation = 1.0;
  /// Exact mean and standard deviation of the statistic over balanced relabellings.
  double null_mean = 0.0;
  double null_sd = 0.0;
  std::size_t n = 0;
};

/// Blocked OpenMP implementation.  Distances, moments and the statistic in double; the
/// permutation replicates as a single-precision matrix product.
EnergyTestResult energy_test(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const EnergyTestOptions& opts = {});

/// Straightforward serial reference with the same relabellings.
EnergyTestResult energy_test_serial(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                    const EnergyTestOptions& opts = {});

/// Energy-distance V-statistic alone (any sample sizes).
double energy_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Exact mean and variance of sum_{i != j} D_ij z_i z_j for z uniform over balanced +-1
/// labellings, from T = sum D_ij, S2 = sum D_ij^2 and R = sum_i (sum_j D_ij)^2.
struct RelabelMoments {
  double mean = 0.0;
  double variance = 0.0;
};
RelabelMoments relabel_moments(double total, double squares, double row_squares, std::size_t n_pool);

/// Upper tail of a gamma law with the given mean and variance at w >= 0.
double gamma_tail(double w, double mean, double variance);

}  // namespace equisym

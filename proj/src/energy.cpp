#include "equisym/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "equisym/errors.hpp"
#include "equisym/random.hpp"

namespace equisym {

namespace {

constexpr std::size_t kBlock = 256;

void require_samples(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("energy test needs equal sample sizes");
  if (a.cols() != b.cols()) throw InvalidArgument("energy test samples differ in dimension");
  if (a.rows() < 2) throw InvalidArgument("energy test needs at least two observations per sample");
  if (!a.allFinite() || !b.allFinite()) throw InvariantViolation("non-finite sample in energy test");
}

/// Pooled observations, one per column.
Eigen::MatrixXd pool(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd p(a.cols(), a.rows() + b.rows());
  p.leftCols(a.rows()) = a.transpose();
  p.rightCols(b.rows()) = b.transpose();
  return p;
}

/// Balanced +-1 relabelling number k; shared by both implementations.
std::vector<int> relabelling(std::size_t n_pool, const RandomSource& master, std::size_t k) {
  std::vector<int> z(n_pool, -1);
  std::fill(z.begin(), z.begin() + static_cast<long>(n_pool / 2), 1);
  RandomSource rng = master.split(k);
  std::shuffle(z.begin(), z.end(), rng.engine());
  return z;
}

EnergyTestResult finish(double q_obs, double total, double squares, double row_squares,
                        const std::vector<double>& q_perm, std::size_t n) {
  EnergyTestResult r;
  r.n = n;
  const std::size_t n_pool = 2 * n;
  const double norm = static_cast<double>(n) * static_cast<double>(n);
  const double w = -q_obs;
  r.statistic = w / norm;
  const RelabelMoments m = relabel_moments(total, squares, row_squares, n_pool);
  r.null_mean = -m.mean / norm;
  r.null_sd = std::sqrt(std::max(m.variance, 0.0)) / norm;
  r.p_value = gamma_tail(w, -m.mean, m.variance);
  std::size_t exceed = 0;
  for (double qb : q_perm)
    if (-qb >= w) ++exceed;
  r.p_permutation = (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(q_perm.size()));
  return r;
}

}  // namespace

RelabelMoments relabel_moments(double total, double squares, double row_squares, std::size_t n_pool) {
  if (n_pool < 4) throw InvalidArgument("relabelling moments need a pool of at least 4");
  const double nm1 = static_cast<double>(n_pool) - 1.0;
  const double nm3 = static_cast<double>(n_pool) - 3.0;
  RelabelMoments m;
  m.mean = -total / nm1;
  const double second = 2.0 * squares - 4.0 * (row_squares - squares) / nm1 +
                        3.0 * (total * total - 4.0 * row_squares + 2.0 * squares) / (nm1 * nm3);
  m.variance = second - m.mean * m.mean;
  return m;
}

double gamma_tail(double w, double mean, double variance) {
  const double tiny = 1e-12 * std::max(1.0, std::abs(mean));
  if (mean <= 0.0 || variance <= tiny * tiny) return w > mean + tiny ? 0.0 : 1.0;
  const double shape = mean * mean / variance;
  const double scale = variance / mean;
  if (w <= 0.0) return 1.0;
  return boost::math::gamma_q(shape, w / scale);
}

double energy_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) throw InvalidArgument("energy distance samples differ in dimension");
  auto mean_dist = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      s += (y.rowwise() - x.row(i)).rowwise().norm().sum();
    return s / (static_cast<double>(x.rows()) * static_cast<double>(y.rows()));
  };
  return 2.0 * mean_dist(a, b) - mean_dist(a, a) - mean_dist(b, b);
}

EnergyTestResult energy_test_serial(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                    const EnergyTestOptions& opts) {
  require_samples(a, b);
  const std::size_t n = static_cast<std::size_t>(a.rows());
  const std::size_t np = 2 * n;
  const Eigen::MatrixXd p = pool(a, b);
  Eigen::MatrixXd d(np, np);
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j) d(i, j) = (p.col(i) - p.col(j)).norm();

  double total = 0.0, squares = 0.0, row_squares = 0.0, q_obs = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double ri = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      if (i == j) continue;
      ri += d(i, j);
      squares += d(i, j) * d(i, j);
      q_obs += d(i, j) * ((i < n) == (j < n) ? 1.0 : -1.0);
    }
    total += ri;
    row_squares += ri * ri;
  }
  const RandomSource master(opts.seed);
  std::vector<double> q_perm(opts.permutations, 0.0);
  for (std::size_t k = 0; k < opts.permutations; ++k) {
    const std::vector<int> z = relabelling(np, master, k);
    double q = 0.0;
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        if (i != j) q += d(i, j) * z[i] * z[j];
    q_perm[k] = q;
  }
  return finish(q_obs, total, squares, row_squares, q_perm, n);
}

EnergyTestResult energy_test(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const EnergyTestOptions& opts) {
  require_samples(a, b);
  const std::size_t n = static_cast<std::size_t>(a.rows());
  const std::size_t np = 2 * n;
  const Eigen::Index dim = a.cols();
  const Eigen::MatrixXd p = pool(a, b);
  const std::size_t perms = opts.permutations;

  const RandomSource master(opts.seed);
  Eigen::MatrixXf z(np, perms);
  for (std::size_t k = 0; k < perms; ++k) {
    const std::vector<int> zk = relabelling(np, master, k);
    for (std::size_t i = 0; i < np; ++i) z(i, k) = static_cast<float>(zk[i]);
  }

  const std::size_t blocks = (np + kBlock - 1) / kBlock;
  struct Partial {
    double total = 0.0, squares = 0.0, row_squares = 0.0, q_obs = 0.0;
    std::vector<double> q_perm;
  };
  std::vector<Partial> parts(blocks);

#pragma omp parallel
  {
    Eigen::MatrixXd dblock;
    Eigen::MatrixXf fblock, dz;
#pragma omp for schedule(dynamic, 1)
    for (long long bi = 0; bi < static_cast<long long>(blocks); ++bi) {
      const std::size_t lo = static_cast<std::size_t>(bi) * kBlock;
      const std::size_t rows = std::min(kBlock, np - lo);
      dblock.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(np));
      Partial& part = parts[static_cast<std::size_t>(bi)];
      for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t i = lo + r;
        const double* pi = p.col(static_cast<Eigen::Index>(i)).data();
        double ri = 0.0, same = 0.0, cross = 0.0;
        for (std::size_t j = 0; j < np; ++j) {
          const double* pj = p.col(static_cast<Eigen::Index>(j)).data();
          double s = 0.0;
          for (Eigen::Index c = 0; c < dim; ++c) {
            const double diff = pi[c] - pj[c];
            s += diff * diff;
          }
          const double dij = std::sqrt(s);
          dblock(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = dij;
          ri += dij;
          part.squares += dij * dij;
          ((i < n) == (j < n) ? same : cross) += dij;
        }
        part.total += ri;
        part.row_squares += ri * ri;
        part.q_obs += same - cross;
      }
      if (perms > 0) {
        fblock = dblock.cast<float>();
        dz.noalias() = fblock * z;
        part.q_perm.assign(perms, 0.0);
        for (std::size_t k = 0; k < perms; ++k) {
          double q = 0.0;
          for (std::size_t r = 0; r < rows; ++r)
            q += static_cast<double>(z(static_cast<Eigen::Index>(lo + r), static_cast<Eigen::Index>(k))) *
                 static_cast<double>(dz(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)));
          part.q_perm[k] = q;
        }
      }
    }
  }

  Partial sum;
  sum.q_perm.assign(perms, 0.0);
  for (const Partial& part : parts) {
    sum.total += part.total;
    sum.squares += part.squares;
    sum.row_squares += part.row_squares;
    sum.q_obs += part.q_obs;
    for (std::size_t k = 0; k < part.q_perm.size(); ++k) sum.q_perm[k] += part.q_perm[k];
  }
  return finish(sum.q_obs, sum.total, sum.squares, sum.row_squares, sum.q_perm, n);
}

}  // namespace equisym

#pragma once

// Shared generators for randomized tests. Everything is seeded through the
// library's own counter rng so failures replay exactly.

#include <Eigen/Dense>
#include <string>

#include "fairlin/base_model.hpp"
#include "fairlin/group_stats.hpp"
#include "fairlin/rng.hpp"

namespace fairlin::testing {

inline GroupStats stats_1d(double mu1, double mu2, double var1, double var2, double p1 = 0.5) {
  GroupStats stats;
  stats.prior = Eigen::Vector2d(p1, 1.0 - p1);
  stats.mean = {Eigen::VectorXd::Constant(1, mu1), Eigen::VectorXd::Constant(1, mu2)};
  stats.covariance = {Eigen::MatrixXd::Constant(1, 1, var1), Eigen::MatrixXd::Constant(1, 1, var2)};
  stats.count = {2, 2};
  stats.labels = {"1", "2"};
  return stats;
}

inline GroupStats random_stats(std::uint64_t seed, Eigen::Index d, int m, bool diagonal = false) {
  CounterRng rng(seed, 0);
  GroupStats stats;
  Eigen::VectorXd raw(m);
  for (int g = 0; g < m; ++g) raw(g) = 0.2 + rng.next_unit();
  stats.prior = raw / raw.sum();
  for (int g = 0; g < m; ++g) {
    Eigen::VectorXd mu(d);
    for (Eigen::Index j = 0; j < d; ++j) mu(j) = 3.0 * rng.next_gaussian();
    Eigen::MatrixXd sigma;
    if (diagonal) {
      Eigen::VectorXd diag(d);
      for (Eigen::Index j = 0; j < d; ++j) diag(j) = 0.1 + 2.0 * rng.next_unit();
      sigma = diag.asDiagonal();
    } else {
      Eigen::MatrixXd a(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = rng.next_gaussian();
      sigma = a * a.transpose() / static_cast<double>(d) +
              0.05 * Eigen::MatrixXd::Identity(d, d);
    }
    stats.mean.push_back(mu);
    stats.covariance.push_back(sigma);
    stats.count.push_back(2);
    stats.labels.push_back(std::to_string(g + 1));
  }
  return stats;
}

inline BaseLinearModel random_model(std::uint64_t seed, Eigen::Index d) {
  CounterRng rng(seed, 1);
  BaseLinearModel m;
  m.beta = Eigen::VectorXd(d);
  for (Eigen::Index j = 0; j < d; ++j) m.beta(j) = rng.next_gaussian();
  m.gamma = rng.next_gaussian();
  m.beta0 = rng.next_gaussian();
  return m;
}

inline Eigen::MatrixXd psd_root(const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace fairlin::testing

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fairlin/dataset.hpp"

namespace fairlin {

struct BaseLinearModel;

// Per-group sample statistics: priors, feature means and covariances.
// Covariances use the maximum-likelihood divisor n_s (not n_s - 1) plus an
// optional ridge on the diagonal; they are only ever consumed through
// beta' Sigma beta and its square root.
struct GroupStats {
  Eigen::VectorXd prior;                    // p_s, sums to 1
  std::vector<Eigen::VectorXd> mean;        // mu^(s)
  std::vector<Eigen::MatrixXd> covariance;  // Sigma^(s), symmetric PSD
  std::vector<std::int64_t> count;          // n_s
  std::vector<std::string> labels;          // raw label per group

  int group_count() const { return static_cast<int>(mean.size()); }
  Eigen::Index dim() const { return mean.empty() ? 0 : mean.front().size(); }
};

// Group-conditional moments of a linear score and their prior-weighted
// population averages.
struct ScoreMoments {
  Eigen::VectorXd group_mean;  // mu_f^(s)
  Eigen::VectorXd group_std;   // sigma_f^(s) >= 0
  double mean_bar = 0.0;       // sum_s p_s mu_f^(s)
  double std_bar = 0.0;        // sum_s p_s sigma_f^(s)
};

// Plug-in estimation of GroupStats from a dataset.
// `diag_reg` is added to every covariance diagonal (guards numerically
// degenerate groups; default 0). Throws GroupTooSmall if any group has
// fewer than 2 samples.
GroupStats estimate_group_stats(const Dataset& data, double diag_reg = 0.0);

// Conditional mean / std of <x, beta> + gamma s + beta0 under per-group
// Gaussian feature laws:
//   mu_f^(s)    = <mu^(s), beta> + gamma * s + beta0
//   sigma_f^(s) = sqrt(beta' Sigma^(s) beta)
ScoreMoments score_moments(const BaseLinearModel& model, const GroupStats& stats);

}  // namespace fairlin

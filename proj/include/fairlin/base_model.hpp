#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fairlin/dataset.hpp"

namespace fairlin {

// Linear score y ~ <x, beta> + gamma * s + beta0. "Unaware" models exclude
// the sensitive attribute entirely (gamma is exactly 0).
//
// Note on M > 2: gamma * s imposes an ordinal effect of the group index.
// We keep that literal form; with more than two groups the encoding of the
// labels matters and is recorded in the dataset's label mapping.
struct BaseLinearModel {
  Eigen::VectorXd beta;
  double gamma = 0.0;
  double beta0 = 0.0;
  bool aware = true;

  Eigen::Index dim() const { return beta.size(); }
};

// One affine score per group: either a shared slope with group intercepts
// (intercept-averaging baseline) or fully independent per-group fits
// (norm-weighted slope baseline).
struct GroupwiseLinearModel {
  std::vector<Eigen::VectorXd> beta_per_group;
  Eigen::VectorXd intercept_per_group;
  bool shared_slope = false;

  int group_count() const { return static_cast<int>(beta_per_group.size()); }
};

// Least squares fit of the base model, optionally ridge-penalized.
// The intercept is never penalized; the solve goes through a Householder QR
// of the centered (and ridge-augmented) design. gamma is forced to 0 when
// aware == false. Throws SingularDesign on rank deficiency at ridge = 0.
BaseLinearModel fit_ols(const Dataset& data, bool aware, double ridge = 0.0);

// shared_slope = true : one fit with group one-hot intercepts replacing the
//                       global intercept (all beta_per_group equal).
// shared_slope = false: independent per-group fits. `with_intercept` only
//                       applies to this branch; the paper-literal per-group
//                       model has no intercept, and the norm-weighted
//                       baseline reproduces its documented sensitivity to
//                       direct bias only when fitted that way.
GroupwiseLinearModel fit_groupwise(const Dataset& data, bool shared_slope,
                                   bool with_intercept = true);

// <x, beta> + gamma * s + beta0, fixed left-to-right summation order.
double predict(const BaseLinearModel& model, const Eigen::VectorXd& x, int s);

// Convenience: scores for every row of a dataset.
Eigen::VectorXd predict_all(const BaseLinearModel& model, const Dataset& data);

}  // namespace fairlin

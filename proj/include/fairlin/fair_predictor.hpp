#pragma once

#include <Eigen/Dense>

#include "fairlin/base_model.hpp"
#include "fairlin/group_stats.hpp"

namespace fairlin {

// Optimal epsilon-fair post-processing of a linear score.
//
// The predictor standardizes the score within each group and re-dresses it
// with interpolated moments
//   mu_eps^(s)    = (1 - sqrt(eps)) * mean_bar + sqrt(eps) * mu_f^(s)
//   sigma_eps^(s) = (1 - sqrt(eps)) * std_bar  + sqrt(eps) * sigma_f^(s)
// so eps = 0 equalizes every group's output distribution and eps = 1
// reproduces the base model.
struct FairPredictor {
  double epsilon = 1.0;
  BaseLinearModel base;
  GroupStats stats;
  ScoreMoments moments;
  Eigen::VectorXd mu_eps;
  Eigen::VectorXd sigma_eps;

  // Per-group slope multiplier sigma_eps / sigma_f, with the degenerate
  // conventions resolved at build time (see build_fair_predictor).
  Eigen::VectorXd scale;
  bool all_degenerate = false;

  int group_count() const { return stats.group_count(); }
};

// The same predictor written as one affine model per group.
struct GroupCoefficients {
  std::vector<Eigen::VectorXd> beta_eps;  // (sigma_eps/sigma_f) * beta
  Eigen::VectorXd intercept_eps;          // mu_eps - (sigma_eps/sigma_f) <mu^(s), beta>
};

// Degeneracy tolerance for group score standard deviations.
inline double degenerate_tol(const ScoreMoments& m) {
  return 1e-12 * std::max(1.0, m.std_bar);
}

// Builds the epsilon-fair predictor from a fitted base model and group
// statistics. If every group's score std is below tolerance the predictor
// collapses to the pure intercept model mu_eps^(s); if only some groups are
// degenerate (and eps < 1, where the ratio matters) this throws
// DegenerateScore instead of silently dividing.
FairPredictor build_fair_predictor(const BaseLinearModel& base, const GroupStats& stats,
                                   double epsilon);

// sigma_eps^(s) * <x - mu^(s), beta> / sigma_f^(s) + mu_eps^(s)
double fair_predict(const FairPredictor& fp, const Eigen::VectorXd& x, int s);

Eigen::VectorXd fair_predict_all(const FairPredictor& fp, const Dataset& data);

// Equivalent per-group coefficients; requires every sigma_f^(s) > tol.
GroupCoefficients group_coefficients(const FairPredictor& fp);

// Intercept-averaging baseline: <x, beta> + sum_s p_s beta0^(s).
// Requires a shared-slope model (checked numerically).
double predict_cs22(const GroupwiseLinearModel& gm, const Eigen::VectorXd& p,
                    const Eigen::VectorXd& x, int s);

// Norm-weighted group-slope baseline:
//   ||beta^(.)|| <beta~^(s), x - mu^(s)> + sum_s' p_s' <beta^(s'), mu^(s')>
// with ||beta^(.)|| = sum_s p_s ||beta^(s)|| and beta~ the unit slope.
double predict_fs23(const GroupwiseLinearModel& gm, const GroupStats& stats,
                    const Eigen::VectorXd& x, int s);

}  // namespace fairlin

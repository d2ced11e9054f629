#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fairlin/base_model.hpp"
#include "fairlin/dataset.hpp"
#include "fairlin/group_stats.hpp"

namespace fairlin {

// Risk and goodness-of-fit, globally and per group. All variances use the
// same divisor-n convention as the group statistics, which makes the
// law-of-total-variance splits exact:
//   w_y + b_y = Var(Y),   w_r + b_r = Var(Y - f).
struct FitReport {
  double mse = 0.0;
  double r2_global = 0.0;
  Eigen::VectorXd r2_per_group;
  double gwr2 = 0.0;
  double gap = 0.0;  // gwr2 - r2_global

  // Gap components: prior-weighted within-group variances and between-group
  // variances of the outcome and the residual.
  double w_y = 0.0, w_r = 0.0, b_y = 0.0, b_r = 0.0;
  Eigen::VectorXd var_y_per_group;
  Eigen::VectorXd var_r_per_group;
  Eigen::VectorXd prior;
};

struct GapIdentity {
  double lhs = 0.0;              // report.gap
  double rhs = 0.0;              // (W_Y B_R - W_R B_Y) / (W_Y (W_Y + B_Y))
  double homoscedasticity = 0.0; // max relative spread of per-group variances
  bool homoscedastic = true;     // homoscedasticity <= threshold
};

// Diagnostic for the conditions under which GWR^2 equals the global R^2.
// Population conditions checked with finite-sample cutoffs; no claim of a
// formal hypothesis test.
struct EqualityConditions {
  bool unaware_model = false;           // gamma == 0 in the audited model
  bool no_residual_association = false; // residual-on-S slope t-ratio below threshold
  bool feature_independence = false;    // max standardized mean/variance discrepancy below threshold
  double gamma_abs = 0.0;
  double association_ratio = 0.0;
  double max_discrepancy = 0.0;
};

FitReport evaluate(const Eigen::VectorXd& predictions, const Dataset& data);

// Population-analytic counterpart of `evaluate`: the audited linear predictor
// against the Gaussian generating law
//   Y = <X, beta_true> + gamma_true S + beta0_true + noise,
// with X | S=s ~ N(mu^(s), Sigma^(s)) taken from `stats` (priors included).
// Used wherever exact moments are required rather than sampled ones.
FitReport evaluate_gaussian(const BaseLinearModel& predictor, const BaseLinearModel& truth,
                            const GroupStats& stats, double noise_var);

// Appendix-style gap identity: exact under homoscedasticity, reported with a
// homoscedasticity score so callers know when equality should hold.
GapIdentity gap_identity_check(const FitReport& report, double homo_threshold = 0.01);

EqualityConditions equality_conditions_check(const BaseLinearModel& model, const GroupStats& stats,
                                             const Dataset& data,
                                             double association_threshold = 2.0,
                                             double discrepancy_threshold = 0.05);

}  // namespace fairlin

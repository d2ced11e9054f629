#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fairlin/base_model.hpp"
#include "fairlin/group_stats.hpp"

namespace fairlin {

// Wasserstein unfairness of a linear score and its exact decomposition.
// Closure identities (all exact up to rounding):
//   total = fmd + smd
//   fmd   = direct_mean + indirect_mean + interaction
//   smd   = indirect_structural
// Var(S) and Cov(S, .) use the raw integer labels s in 1..M weighted by p_s;
// relabeling groups moves mass between direct and interaction but changes
// neither fmd nor total.
struct UnfairnessReport {
  double total = 0.0;                // U(f)
  double fmd = 0.0;                  // Var(E[f|S])
  double smd = 0.0;                  // Var(sqrt(Var(f|S)))
  double direct_mean = 0.0;          // gamma^2 Var(S)
  double indirect_mean = 0.0;        // Var(<mu^(S), beta>)
  double interaction = 0.0;          // 2 gamma Cov(S, <mu^(S), beta>)
  double indirect_structural = 0.0;  // Var(sqrt(beta' Sigma^(S) beta))
};

// Unfairness of a predictor given as one affine map per group (no
// direct/indirect split: that needs a single global coefficient vector).
struct GroupwiseUnfairness {
  double total = 0.0;
  double fmd = 0.0;
  double smd = 0.0;
};

// Per-feature attribution of indirect unfairness (Taylor-linearized on the
// structural pathway) plus the pairwise cross-terms. The mean pathway is
// exact for any covariance structure:
//   sum_j mean_term + sum_j interaction_term + cross_mean == fmd - direct_mean.
// The structural pathway is approximate; smd_exact and the Taylor error are
// reported next to it rather than hidden. When the group covariances are not
// (numerically) diagonal, the per-feature structural terms only see the
// diagonal and the unattributed remainder ends up in structural_remainder
// (diagonal_sigma == false flags that case).
struct FeatureContribution {
  Eigen::VectorXd mean_term;         // beta_j^2 Var(mu_j^(S))
  Eigen::VectorXd structural_term;   // beta_j^4 Var((sigma_j^(S))^2) / (4 v_bar)
  Eigen::VectorXd interaction_term;  // 2 gamma beta_j Cov(S, mu_j^(S))
  double cross_mean = 0.0;           // 2 sum_{j<k} beta_j beta_k Cov(mu_j, mu_k)
  double cross_structural = 0.0;     // 2 sum_{j<k} beta_j^2 beta_k^2 Cov(sig_j^2, sig_k^2)/(4 v_bar)
  bool diagonal_sigma = true;
  double v_bar = 0.0;  // E[Var(f|S)]

  double approx_sum = 0.0;             // sum_j (mean + structural + interaction)
  double exact_indirect = 0.0;         // total - direct_mean
  double fmd_minus_direct = 0.0;       // exact mean-pathway target
  double smd_exact = 0.0;              // Var(sigma_f^(S))
  double smd_taylor = 0.0;             // diagonal Taylor estimate incl. cross term
  double structural_remainder = 0.0;   // smd_exact - smd_taylor
  double taylor_rel_error = 0.0;       // |smd_taylor - smd_exact| / smd_exact
};

// Squared 2-Wasserstein distance between N(mu1, sigma1^2) and N(mu2, sigma2^2):
// (mu1 - mu2)^2 + (sigma1 - sigma2)^2.
double gaussian_w2(double mu1, double sigma1, double mu2, double sigma2);

// Barycenter of 1-D Gaussians under squared-W2: weighted mean and weighted std.
std::pair<double, double> gaussian_barycenter(const Eigen::VectorXd& mus,
                                              const Eigen::VectorXd& sigmas,
                                              const Eigen::VectorXd& p);

UnfairnessReport unfairness_gaussian(const BaseLinearModel& model, const GroupStats& stats);

// Unfairness of f(x, s) = <x, w_s> + b_s under the group Gaussian laws.
GroupwiseUnfairness unfairness_of_affine_maps(const std::vector<Eigen::VectorXd>& slopes,
                                              const Eigen::VectorXd& intercepts,
                                              const GroupStats& stats);

// Both sides of U(f*_eps) = eps * U(f*): the left computed independently from
// the epsilon-fair predictor's per-group affine maps, the right from the base
// model's report.
std::pair<double, double> residual_unfairness_check(const BaseLinearModel& base,
                                                    const GroupStats& stats, double epsilon);

FeatureContribution feature_decomposition(const BaseLinearModel& model, const GroupStats& stats);

// Exact two-sample Kolmogorov-Smirnov statistic, maximized over all group
// pairs. Values in [0, 1].
double unfairness_ks(const std::vector<std::vector<double>>& scores_by_group);

}  // namespace fairlin

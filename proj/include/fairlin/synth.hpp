#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "fairlin/dataset.hpp"
#include "fairlin/group_stats.hpp"
#include "fairlin/unfairness.hpp"

namespace fairlin {

// Controlled two-group generator. Four knobs map one-to-one onto the bias
// decomposition: t_y drives the direct term, t_mean the indirect mean term,
// t_std / t_corr the indirect structural term. A knob at zero switches its
// bias source off exactly.
struct SynthConfig {
  Eigen::Index d = 5;
  Eigen::Index n = 20000;
  double tau = 0.6;       // group-2 probability is P(Z > tau), Z standard normal
  double t_y = 0.0;
  double t_mean = 0.0;
  double t_std = 0.0;
  double t_corr = 0.0;    // in [0, 1]
  double noise_std = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// The population the generator sampled from, exposed so sweeps have analytic
// target curves. The true outcome model is Y = sum_j X_j + t_y * S (+ noise).
struct SynthGroundTruth {
  double q = 0.0;  // P(S = 2)
  std::vector<Eigen::VectorXd> mu;        // mu^(1), mu^(2)
  std::vector<Eigen::MatrixXd> sigma;     // Sigma^(1), Sigma^(2)
  Eigen::VectorXd beta_true;
  double gamma_true = 0.0;
  double beta0_true = 0.0;

  BaseLinearModel true_model() const;
  GroupStats population_stats() const;
};

// Draws a dataset. Deterministic given the seed; the generator consumes five
// independent counter streams in a frozen order (group labels, per-feature
// population parameters, correlation seeds, feature rows, noise), so
// configurations that share a seed share the population draw.
std::pair<Dataset, SynthGroundTruth> generate(const SynthConfig& cfg);

// Prop.-2 decomposition of the TRUE model against the TRUE population.
UnfairnessReport population_report(const SynthGroundTruth& gt);

}  // namespace fairlin

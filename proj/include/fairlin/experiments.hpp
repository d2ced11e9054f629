#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fairlin/dataset.hpp"
#include "fairlin/fair_predictor.hpp"
#include "fairlin/synth.hpp"

namespace fairlin {

// Mean +- std over runs (population std: divisor = runs).
struct MetricStat {
  double mean = 0.0;
  double std = 0.0;
};

// One aggregated result line. `epsilon` is NaN except for the fair method;
// `knob`/`knob_value` are only set by bias-shift sweeps. The four-way
// decomposition entries are NaN for methods without a single global
// coefficient vector (fair, fs23).
struct SweepRow {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string method;  // base | unaware | cs22 | fs23 | fair
  double epsilon = 0.0;
  std::string knob;
  double knob_value = 0.0;
  int runs = 0;
  std::array<Eigen::Index, 3> split_sizes{0, 0, 0};

  MetricStat mse, rmse, gwr2, ks, ugauss, fmd, smd;
  MetricStat udirect, uindirect_mean, uinteraction, uindirect_structural;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // append-only
  std::string config_hash;
  std::uint64_t seed = 0;
};

struct ComparisonConfig {
  std::array<double, 3> split{0.5, 0.25, 0.25};  // train / test / unlabeled
  std::vector<double> eps_grid;
  int runs = 50;
  std::uint64_t seed = 0;
  double ridge = 0.0;
};

// Train/test/unlabeled protocol: fits the aware and unaware base models plus
// both baselines on the training split, estimates group statistics on the
// unlabeled split (features + S only), builds fair(eps) for every grid point
// and evaluates everything on the test split. Repeated over `runs` shuffled
// splits and aggregated.
SweepResult run_comparison(const Dataset& data, const ComparisonConfig& cfg);

struct BiasShiftConfig {
  std::string knob;  // t_y | t_mean | t_std | t_corr
  std::vector<double> values;
  SynthConfig base;
  ComparisonConfig comparison;
  // Frozen keeps the population draw (and split seeds) identical across knob
  // values, so curves move only through the knob itself.
  bool freeze_population = true;
};

SweepResult run_bias_shift(const BiasShiftConfig& cfg);

// Per-feature / per-group view of how the fair predictor reshapes the base
// coefficients. The gamma row records the structural fact that the fair form
// has no explicit S coefficient; intercept deltas are reported against the
// base model's single intercept.
struct CoefficientShiftRow {
  std::string name;  // feature name, "gamma" or "intercept"
  int group = 0;     // 1..M, or 0 for the gamma row
  double base_value = 0.0;
  double fair_value = 0.0;
  double delta = 0.0;
};

std::vector<CoefficientShiftRow> coefficient_shift_report(
    const BaseLinearModel& base, const FairPredictor& fp,
    const std::vector<std::string>& feature_names = {});

}  // namespace fairlin

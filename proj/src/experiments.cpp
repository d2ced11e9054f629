#include "fairlin/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fairlin/errors.hpp"
#include "fairlin/hashing.hpp"
#include "fairlin/metrics.hpp"
#include "fairlin/parallel.hpp"
#include "fairlin/rng.hpp"
#include "fairlin/unfairness.hpp"

namespace fairlin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Raw per-run metric values for one method.
struct CellMetrics {
  double mse = kNaN, gwr2 = kNaN, ks = kNaN;
  double ugauss = kNaN, fmd = kNaN, smd = kNaN;
  double udirect = kNaN, uindirect_mean = kNaN, uinteraction = kNaN, uindirect_structural = kNaN;

  void fill_report(const UnfairnessReport& r) {
    ugauss = r.total;
    fmd = r.fmd;
    smd = r.smd;
    udirect = r.direct_mean;
    uindirect_mean = r.indirect_mean;
    uinteraction = r.interaction;
    uindirect_structural = r.indirect_structural;
  }
  void fill_groupwise(const GroupwiseUnfairness& u) {
    ugauss = u.total;
    fmd = u.fmd;
    smd = u.smd;
  }
};

MetricStat aggregate(const std::vector<double>& values) {
  MetricStat st;
  if (values.empty()) return st;
  const double n = static_cast<double>(values.size());
  st.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double acc = 0.0;
  for (double v : values) acc += (v - st.mean) * (v - st.mean);
  st.std = std::sqrt(acc / n);
  return st;
}

std::vector<std::vector<double>> scores_by_group(const Eigen::VectorXd& scores,
                                                 const Dataset& data) {
  std::vector<std::vector<double>> by_group(static_cast<size_t>(data.group_count()));
  for (Eigen::Index i = 0; i < data.size(); ++i)
    by_group[static_cast<size_t>(data.s[static_cast<size_t>(i)] - 1)].push_back(scores(i));
  return by_group;
}

std::string comparison_fingerprint(const Dataset& data, const ComparisonConfig& cfg) {
  std::ostringstream os;
  os << "comparison;n=" << data.size() << ";d=" << data.dim() << ";m=" << data.group_count()
     << ";split=" << cfg.split[0] << "," << cfg.split[1] << "," << cfg.split[2]
     << ";runs=" << cfg.runs << ";seed=" << cfg.seed << ";ridge=" << cfg.ridge << ";eps=";
  for (double e : cfg.eps_grid) os << e << ",";
  return os.str();
}

}  // namespace

SweepResult run_comparison(const Dataset& data, const ComparisonConfig& cfg) {
  if (cfg.runs < 1) throw InvalidArgument("runs must be >= 1");
  double frac_sum = cfg.split[0] + cfg.split[1] + cfg.split[2];
  if (cfg.split[0] <= 0 || cfg.split[1] <= 0 || cfg.split[2] <= 0 ||
      std::abs(frac_sum - 1.0) > 1e-9)
    throw InvalidArgument("split fractions must be positive and sum to 1");
  for (double e : cfg.eps_grid)
    if (!(e >= 0.0 && e <= 1.0)) throw EpsilonOutOfRange(e);

  const Eigen::Index n = data.size();
  const int m = data.group_count();
  const Eigen::Index n_train = static_cast<Eigen::Index>(std::floor(cfg.split[0] * static_cast<double>(n)));
  const Eigen::Index n_test = static_cast<Eigen::Index>(std::floor(cfg.split[1] * static_cast<double>(n)));

  // Methods: base, unaware, cs22, fs23, then one fair cell per grid point.
  const size_t n_methods = 4 + cfg.eps_grid.size();
  std::vector<std::vector<CellMetrics>> cells(
      static_cast<size_t>(cfg.runs), std::vector<CellMetrics>(n_methods));

  parallel_for(static_cast<size_t>(cfg.runs), [&](size_t run) {
    // Shuffled split; one rng stream per run keeps runs independent.
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    CounterRng rng(cfg.seed, 1000 + run);
    for (Eigen::Index i = n - 1; i > 0; --i) {
      const auto j = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
    }
    std::vector<Eigen::Index> train_idx(order.begin(), order.begin() + n_train);
    std::vector<Eigen::Index> test_idx(order.begin() + n_train, order.begin() + n_train + n_test);
    std::vector<Eigen::Index> unlabeled_idx(order.begin() + n_train + n_test, order.end());

    auto count_groups = [&](const std::vector<Eigen::Index>& idx, const char* which) {
      std::vector<long> counts(static_cast<size_t>(m), 0);
      for (Eigen::Index i : idx) counts[static_cast<size_t>(data.s[static_cast<size_t>(i)] - 1)]++;
      for (int g = 0; g < m; ++g)
        if (counts[static_cast<size_t>(g)] < 2)
          throw SplitTooSmall(std::string(which) + " split has " +
                              std::to_string(counts[static_cast<size_t>(g)]) +
                              " samples of group " + std::to_string(g + 1));
    };
    count_groups(train_idx, "train");
    count_groups(test_idx, "test");
    count_groups(unlabeled_idx, "unlabeled");

    const Dataset train = data.subset(train_idx);
    const Dataset test = data.subset(test_idx);
    const Dataset unlabeled = data.subset(unlabeled_idx);

    const BaseLinearModel base = fit_ols(train, /*aware=*/true, cfg.ridge);
    const BaseLinearModel unaware = fit_ols(train, /*aware=*/false, cfg.ridge);
    const GroupwiseLinearModel cs22 = fit_groupwise(train, /*shared_slope=*/true);
    // Paper-literal per-group model (no intercept): keeps the baseline's
    // documented sensitivity to direct bias observable.
    const GroupwiseLinearModel fs23 =
        fit_groupwise(train, /*shared_slope=*/false, /*with_intercept=*/false);
    const GroupStats stats = estimate_group_stats(unlabeled);

    auto eval_cell = [&](const Eigen::VectorXd& scores) {
      CellMetrics cell;
      const FitReport rep = evaluate(scores, test);
      cell.mse = rep.mse;
      cell.gwr2 = rep.gwr2;
      cell.ks = unfairness_ks(scores_by_group(scores, test));
      return cell;
    };

    size_t slot = 0;
    {  // base (aware)
      CellMetrics cell = eval_cell(predict_all(base, test));
      cell.fill_report(unfairness_gaussian(base, stats));
      cells[run][slot++] = cell;
    }
    {  // unaware
      CellMetrics cell = eval_cell(predict_all(unaware, test));
      cell.fill_report(unfairness_gaussian(unaware, stats));
      cells[run][slot++] = cell;
    }
    {  // cs22: shared slope, prior-averaged intercepts
      Eigen::VectorXd scores(test.size());
      for (Eigen::Index i = 0; i < test.size(); ++i)
        scores(i) = predict_cs22(cs22, stats.prior, test.x.row(i).transpose(),
                                 test.s[static_cast<size_t>(i)]);
      CellMetrics cell = eval_cell(scores);
      BaseLinearModel merged;
      merged.beta = cs22.beta_per_group.front();
      merged.gamma = 0.0;
      merged.beta0 = stats.prior.dot(cs22.intercept_per_group);
      merged.aware = false;
      cell.fill_report(unfairness_gaussian(merged, stats));
      cells[run][slot++] = cell;
    }
    {  // fs23: norm-weighted group slopes
      Eigen::VectorXd scores(test.size());
      for (Eigen::Index i = 0; i < test.size(); ++i)
        scores(i) = predict_fs23(fs23, stats, test.x.row(i).transpose(),
                                 test.s[static_cast<size_t>(i)]);
      CellMetrics cell = eval_cell(scores);
      double norm_bar = 0.0;
      for (int g = 0; g < m; ++g)
        norm_bar += stats.prior(g) * fs23.beta_per_group[static_cast<size_t>(g)].norm();
      std::vector<Eigen::VectorXd> slopes;
      Eigen::VectorXd intercepts(m);
      double mean_term = 0.0;
      for (int g = 0; g < m; ++g)
        mean_term += stats.prior(g) *
                     fs23.beta_per_group[static_cast<size_t>(g)].dot(stats.mean[static_cast<size_t>(g)]);
      for (int g = 0; g < m; ++g) {
        const auto& b = fs23.beta_per_group[static_cast<size_t>(g)];
        slopes.push_back(norm_bar * b / b.norm());
        intercepts(g) = mean_term - slopes.back().dot(stats.mean[static_cast<size_t>(g)]);
      }
      cell.fill_groupwise(unfairness_of_affine_maps(slopes, intercepts, stats));
      cells[run][slot++] = cell;
    }
    for (double eps : cfg.eps_grid) {  // fair(eps)
      const FairPredictor fp = build_fair_predictor(base, stats, eps);
      CellMetrics cell = eval_cell(fair_predict_all(fp, test));
      const GroupCoefficients gc = group_coefficients(fp);
      cell.fill_groupwise(unfairness_of_affine_maps(gc.beta_eps, gc.intercept_eps, stats));
      cells[run][slot++] = cell;
    }
  });

  SweepResult result;
  result.seed = cfg.seed;
  result.config_hash = hash_hex(comparison_fingerprint(data, cfg));

  auto emit = [&](size_t slot, const std::string& method, double eps) {
    SweepRow row;
    row.config_hash = result.config_hash;
    row.seed = cfg.seed;
    row.method = method;
    row.epsilon = eps;
    row.knob_value = kNaN;
    row.runs = cfg.runs;
    row.split_sizes = {n_train, n_test, n - n_train - n_test};

    auto collect = [&](auto member) {
      std::vector<double> vals;
      vals.reserve(static_cast<size_t>(cfg.runs));
      for (int r = 0; r < cfg.runs; ++r) {
        const double v = cells[static_cast<size_t>(r)][slot].*member;
        if (!std::isnan(v)) vals.push_back(v);
      }
      return vals.empty() ? MetricStat{kNaN, kNaN} : aggregate(vals);
    };
    row.mse = collect(&CellMetrics::mse);
    {
      std::vector<double> rmse;
      for (int r = 0; r < cfg.runs; ++r)
        rmse.push_back(std::sqrt(cells[static_cast<size_t>(r)][slot].mse));
      row.rmse = aggregate(rmse);
    }
    row.gwr2 = collect(&CellMetrics::gwr2);
    row.ks = collect(&CellMetrics::ks);
    row.ugauss = collect(&CellMetrics::ugauss);
    row.fmd = collect(&CellMetrics::fmd);
    row.smd = collect(&CellMetrics::smd);
    row.udirect = collect(&CellMetrics::udirect);
    row.uindirect_mean = collect(&CellMetrics::uindirect_mean);
    row.uinteraction = collect(&CellMetrics::uinteraction);
    row.uindirect_structural = collect(&CellMetrics::uindirect_structural);
    result.rows.push_back(std::move(row));
  };

  emit(0, "base", kNaN);
  emit(1, "unaware", kNaN);
  emit(2, "cs22", kNaN);
  emit(3, "fs23", kNaN);
  for (size_t e = 0; e < cfg.eps_grid.size(); ++e) emit(4 + e, "fair", cfg.eps_grid[e]);
  return result;
}

SweepResult run_bias_shift(const BiasShiftConfig& cfg) {
  auto apply_knob = [&](SynthConfig base, double value) {
    if (cfg.knob == "t_y") base.t_y = value;
    else if (cfg.knob == "t_mean") base.t_mean = value;
    else if (cfg.knob == "t_std") base.t_std = value;
    else if (cfg.knob == "t_corr") base.t_corr = value;
    else throw InvalidArgument("unknown knob '" + cfg.knob + "'");
    return base;
  };

  std::ostringstream os;
  os << "bias_shift;knob=" << cfg.knob << ";freeze=" << cfg.freeze_population
     << ";seed=" << cfg.base.seed << ";values=";
  for (double v : cfg.values) os << v << ",";

  SweepResult result;
  result.seed = cfg.comparison.seed;
  result.config_hash = hash_hex(os.str());

  for (size_t k = 0; k < cfg.values.size(); ++k) {
    SynthConfig point = apply_knob(cfg.base, cfg.values[k]);
    if (!cfg.freeze_population) point.seed = cfg.base.seed + 1 + static_cast<std::uint64_t>(k);
    auto [data, gt] = generate(point);
    (void)gt;
    SweepResult partial = run_comparison(data, cfg.comparison);
    for (SweepRow& row : partial.rows) {
      row.knob = cfg.knob;
      row.knob_value = cfg.values[k];
      row.config_hash = result.config_hash;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::vector<CoefficientShiftRow> coefficient_shift_report(
    const BaseLinearModel& base, const FairPredictor& fp,
    const std::vector<std::string>& feature_names) {
  if (base.dim() != fp.base.dim() || (base.beta - fp.base.beta).lpNorm<Eigen::Infinity>() > 1e-12 ||
      std::abs(base.gamma - fp.base.gamma) > 1e-12 || std::abs(base.beta0 - fp.base.beta0) > 1e-12)
    throw InvalidArgument("fair predictor was not built from the given base model");

  const GroupCoefficients gc = group_coefficients(fp);
  const Eigen::Index d = base.dim();
  const int m = fp.group_count();

  auto name_of = [&](Eigen::Index j) {
    return j < static_cast<Eigen::Index>(feature_names.size())
               ? feature_names[static_cast<size_t>(j)]
               : "x" + std::to_string(j + 1);
  };

  std::vector<CoefficientShiftRow> rows;
  for (int g = 1; g <= m; ++g)
    for (Eigen::Index j = 0; j < d; ++j)
      rows.push_back({name_of(j), g, base.beta(j), gc.beta_eps[static_cast<size_t>(g - 1)](j),
                      gc.beta_eps[static_cast<size_t>(g - 1)](j) - base.beta(j)});
  // The fair form carries no explicit S coefficient: its group dependence
  // lives entirely in the per-group intercept and scale.
  rows.push_back({"gamma", 0, base.gamma, 0.0, -base.gamma});
  for (int g = 1; g <= m; ++g)
    rows.push_back({"intercept", g, base.beta0, gc.intercept_eps(g - 1),
                    gc.intercept_eps(g - 1) - base.beta0});
  return rows;
}

}  // namespace fairlin

#include "fairlin/metrics.hpp"

#include <cmath>

#include "fairlin/errors.hpp"

namespace fairlin {

namespace {

double population_var(const Eigen::VectorXd& v) {
  const double m = v.mean();
  return (v.array() - m).square().mean();
}

FitReport assemble_report(const Eigen::VectorXd& prior, const Eigen::VectorXd& mean_y,
                          const Eigen::VectorXd& var_y, const Eigen::VectorXd& mean_r,
                          const Eigen::VectorXd& var_r, double mse) {
  const int m = static_cast<int>(prior.size());
  FitReport rep;
  rep.prior = prior;
  rep.var_y_per_group = var_y;
  rep.var_r_per_group = var_r;
  rep.mse = mse;

  rep.w_y = prior.dot(var_y);
  rep.w_r = prior.dot(var_r);
  const double my = prior.dot(mean_y);
  const double mr = prior.dot(mean_r);
  rep.b_y = 0.0;
  rep.b_r = 0.0;
  for (int g = 0; g < m; ++g) {
    rep.b_y += prior(g) * (mean_y(g) - my) * (mean_y(g) - my);
    rep.b_r += prior(g) * (mean_r(g) - mr) * (mean_r(g) - mr);
  }

  const double var_y_total = rep.w_y + rep.b_y;
  const double tol = 1e-12 * std::max(1.0, var_y_total);
  rep.r2_per_group.resize(m);
  for (int g = 0; g < m; ++g) {
    if (var_y(g) <= tol) throw ZeroOutcomeVariance(g + 1);
    rep.r2_per_group(g) = 1.0 - var_r(g) / var_y(g);
  }
  rep.r2_global = 1.0 - (rep.w_r + rep.b_r) / var_y_total;
  rep.gwr2 = prior.dot(rep.r2_per_group);
  rep.gap = rep.gwr2 - rep.r2_global;
  return rep;
}

}  // namespace

FitReport evaluate(const Eigen::VectorXd& predictions, const Dataset& data) {
  const Eigen::Index n = data.size();
  if (predictions.size() != n)
    throw LengthMismatch("predictions length must match dataset size");
  const int m = data.group_count();

  Eigen::VectorXd residual = data.y - predictions;
  Eigen::VectorXd prior(m), mean_y(m), var_y(m), mean_r(m), var_r(m);
  for (int g = 0; g < m; ++g) {
    std::vector<double> ys, rs;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (data.s[static_cast<size_t>(i)] != g + 1) continue;
      ys.push_back(data.y(i));
      rs.push_back(residual(i));
    }
    const Eigen::Map<const Eigen::VectorXd> yv(ys.data(), static_cast<Eigen::Index>(ys.size()));
    const Eigen::Map<const Eigen::VectorXd> rv(rs.data(), static_cast<Eigen::Index>(rs.size()));
    prior(g) = static_cast<double>(ys.size()) / static_cast<double>(n);
    mean_y(g) = yv.mean();
    var_y(g) = population_var(yv);
    mean_r(g) = rv.mean();
    var_r(g) = population_var(rv);
  }
  return assemble_report(prior, mean_y, var_y, mean_r, var_r, residual.squaredNorm() / static_cast<double>(n));
}

FitReport evaluate_gaussian(const BaseLinearModel& predictor, const BaseLinearModel& truth,
                            const GroupStats& stats, double noise_var) {
  if (predictor.dim() != stats.dim() || truth.dim() != stats.dim())
    throw DimensionMismatch("model/stats dimension mismatch");
  if (noise_var < 0.0) throw InvalidArgument("noise variance must be >= 0");
  const int m = stats.group_count();

  const Eigen::VectorXd diff = truth.beta - predictor.beta;
  const double dgamma = truth.gamma - predictor.gamma;
  const double dintercept = truth.beta0 - predictor.beta0;

  Eigen::VectorXd mean_y(m), var_y(m), mean_r(m), var_r(m);
  for (int g = 0; g < m; ++g) {
    const auto gi = static_cast<size_t>(g);
    const double s = static_cast<double>(g + 1);
    mean_y(g) = stats.mean[gi].dot(truth.beta) + truth.gamma * s + truth.beta0;
    var_y(g) = truth.beta.dot(stats.covariance[gi] * truth.beta) + noise_var;
    mean_r(g) = stats.mean[gi].dot(diff) + dgamma * s + dintercept;
    var_r(g) = diff.dot(stats.covariance[gi] * diff) + noise_var;
  }
  double mse = 0.0;  // E[R^2] = Var(R) + E[R]^2 via the group mixture
  for (int g = 0; g < m; ++g)
    mse += stats.prior(g) * (var_r(g) + mean_r(g) * mean_r(g));
  return assemble_report(stats.prior, mean_y, var_y, mean_r, var_r, mse);
}

GapIdentity gap_identity_check(const FitReport& report, double homo_threshold) {
  GapIdentity id;
  id.lhs = report.gap;
  id.rhs = (report.w_y * report.b_r - report.w_r * report.b_y) /
           (report.w_y * (report.w_y + report.b_y));

  auto spread = [](const Eigen::VectorXd& v) {
    const double lo = v.minCoeff();
    const double hi = v.maxCoeff();
    return (hi - lo) / std::max(v.mean(), 1e-300);
  };
  id.homoscedasticity = std::max(spread(report.var_y_per_group), spread(report.var_r_per_group));
  id.homoscedastic = id.homoscedasticity <= homo_threshold;
  return id;
}

EqualityConditions equality_conditions_check(const BaseLinearModel& model, const GroupStats& stats,
                                             const Dataset& data, double association_threshold,
                                             double discrepancy_threshold) {
  EqualityConditions ec;
  ec.gamma_abs = std::abs(model.gamma);
  ec.unaware_model = (model.gamma == 0.0);

  // Residual-on-S regression with a t-like ratio on the slope.
  const Eigen::Index n = data.size();
  Eigen::VectorXd residual = data.y - predict_all(model, data);
  Eigen::VectorXd s_val(n);
  for (Eigen::Index i = 0; i < n; ++i) s_val(i) = static_cast<double>(data.s[static_cast<size_t>(i)]);
  const double s_mean = s_val.mean();
  const double r_mean = residual.mean();
  const double s_ss = (s_val.array() - s_mean).square().sum();
  const double cov = ((s_val.array() - s_mean) * (residual.array() - r_mean)).sum();
  const double slope = cov / s_ss;
  const double alpha = r_mean - slope * s_mean;
  const double rss = (residual.array() - (alpha + slope * s_val.array())).square().sum();
  const double dof = std::max(static_cast<double>(n) - 2.0, 1.0);
  const double se = std::sqrt(rss / dof / s_ss);
  ec.association_ratio = se > 0.0 ? std::abs(slope) / se : 0.0;
  ec.no_residual_association = ec.association_ratio < association_threshold;

  // Standardized mean / spread discrepancies of each feature across groups.
  const int m = stats.group_count();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < stats.dim(); ++j) {
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const auto ai = static_cast<size_t>(a), bi = static_cast<size_t>(b);
        const double va = stats.covariance[ai](j, j);
        const double vb = stats.covariance[bi](j, j);
        const double pooled_sd = std::sqrt(std::max((va + vb) / 2.0, 1e-300));
        const double mean_smd = std::abs(stats.mean[ai](j) - stats.mean[bi](j)) / pooled_sd;
        const double std_smd = std::abs(std::sqrt(std::max(va, 0.0)) - std::sqrt(std::max(vb, 0.0))) / pooled_sd;
        worst = std::max({worst, mean_smd, std_smd});
      }
    }
  }
  ec.max_discrepancy = worst;
  ec.feature_independence = worst < discrepancy_threshold;
  return ec;
}

}  // namespace fairlin

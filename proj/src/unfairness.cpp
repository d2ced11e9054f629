#include "fairlin/unfairness.hpp"

#include <algorithm>
#include <cmath>

#include "fairlin/errors.hpp"
#include "fairlin/fair_predictor.hpp"

namespace fairlin {

namespace {

// Centered form; the 1e-10 closure tolerances need it.
double weighted_var(const Eigen::VectorXd& v, const Eigen::VectorXd& p) {
  const double m = p.dot(v);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += p(i) * (v(i) - m) * (v(i) - m);
  return acc;
}

double weighted_cov(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& p) {
  const double ma = p.dot(a);
  const double mb = p.dot(b);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += p(i) * (a(i) - ma) * (b(i) - mb);
  return acc;
}

Eigen::VectorXd group_index_vector(int m) {
  Eigen::VectorXd s(m);
  for (int g = 0; g < m; ++g) s(g) = static_cast<double>(g + 1);
  return s;
}

}  // namespace

double gaussian_w2(double mu1, double sigma1, double mu2, double sigma2) {
  if (sigma1 < 0.0) throw NegativeSigma(sigma1);
  if (sigma2 < 0.0) throw NegativeSigma(sigma2);
  const double dm = mu1 - mu2;
  const double ds = sigma1 - sigma2;
  return dm * dm + ds * ds;
}

std::pair<double, double> gaussian_barycenter(const Eigen::VectorXd& mus,
                                              const Eigen::VectorXd& sigmas,
                                              const Eigen::VectorXd& p) {
  if (mus.size() != sigmas.size() || mus.size() != p.size())
    throw LengthMismatch("barycenter inputs must have equal length");
  for (Eigen::Index i = 0; i < sigmas.size(); ++i)
    if (sigmas(i) < 0.0) throw NegativeSigma(sigmas(i));
  if (std::abs(p.sum() - 1.0) > 1e-9) throw InvalidArgument("weights must sum to 1");
  return {p.dot(mus), p.dot(sigmas)};
}

UnfairnessReport unfairness_gaussian(const BaseLinearModel& model, const GroupStats& stats) {
  const ScoreMoments m = score_moments(model, stats);
  const int groups = stats.group_count();
  const Eigen::VectorXd s_vals = group_index_vector(groups);

  Eigen::VectorXd mean_proj(groups);  // <mu^(s), beta>
  for (int g = 0; g < groups; ++g)
    mean_proj(g) = stats.mean[static_cast<size_t>(g)].dot(model.beta);

  UnfairnessReport r;
  r.fmd = weighted_var(m.group_mean, stats.prior);
  r.smd = weighted_var(m.group_std, stats.prior);
  r.total = r.fmd + r.smd;
  r.direct_mean = model.gamma * model.gamma * weighted_var(s_vals, stats.prior);
  r.indirect_mean = weighted_var(mean_proj, stats.prior);
  r.interaction = 2.0 * model.gamma * weighted_cov(s_vals, mean_proj, stats.prior);
  r.indirect_structural = r.smd;
  return r;
}

GroupwiseUnfairness unfairness_of_affine_maps(const std::vector<Eigen::VectorXd>& slopes,
                                              const Eigen::VectorXd& intercepts,
                                              const GroupStats& stats) {
  const int m = stats.group_count();
  if (static_cast<int>(slopes.size()) != m || intercepts.size() != m)
    throw LengthMismatch("one affine map per group required");

  Eigen::VectorXd mu(m), sigma(m);
  for (int g = 0; g < m; ++g) {
    const auto gi = static_cast<size_t>(g);
    mu(g) = slopes[gi].dot(stats.mean[gi]) + intercepts(g);
    sigma(g) = std::sqrt(std::max(slopes[gi].dot(stats.covariance[gi] * slopes[gi]), 0.0));
  }
  GroupwiseUnfairness u;
  u.fmd = weighted_var(mu, stats.prior);
  u.smd = weighted_var(sigma, stats.prior);
  u.total = u.fmd + u.smd;
  return u;
}

std::pair<double, double> residual_unfairness_check(const BaseLinearModel& base,
                                                    const GroupStats& stats, double epsilon) {
  const FairPredictor fp = build_fair_predictor(base, stats, epsilon);
  const GroupCoefficients gc = group_coefficients(fp);
  const GroupwiseUnfairness u = unfairness_of_affine_maps(gc.beta_eps, gc.intercept_eps, stats);
  const UnfairnessReport star = unfairness_gaussian(base, stats);
  return {u.total, epsilon * star.total};
}

FeatureContribution feature_decomposition(const BaseLinearModel& model, const GroupStats& stats) {
  const UnfairnessReport report = unfairness_gaussian(model, stats);
  const ScoreMoments m = score_moments(model, stats);
  const int groups = stats.group_count();
  const Eigen::Index d = stats.dim();
  if (model.dim() != d) throw DimensionMismatch("model/stats dimension mismatch");

  FeatureContribution fc;
  fc.v_bar = 0.0;
  for (int g = 0; g < groups; ++g) fc.v_bar += stats.prior(g) * m.group_std(g) * m.group_std(g);
  const double tol = 1e-12 * (1.0 + report.total);
  if (fc.v_bar <= tol)
    throw ZeroVariance("average conditional score variance is below tolerance");

  // Off-diagonal relative mass decides whether the structural cross-term is
  // an exact attribution (diagonal covariances) or only a diagonal proxy.
  double off_mass = 0.0, diag_mass = 0.0;
  for (int g = 0; g < groups; ++g) {
    const auto& sig = stats.covariance[static_cast<size_t>(g)];
    diag_mass += sig.diagonal().cwiseAbs().sum();
    off_mass += sig.cwiseAbs().sum() - sig.diagonal().cwiseAbs().sum();
  }
  fc.diagonal_sigma = off_mass <= 1e-8 * std::max(diag_mass, 1e-300);

  const Eigen::VectorXd s_vals = group_index_vector(groups);
  Eigen::MatrixXd mu_js(groups, d);    // mu_j^(s)
  Eigen::MatrixXd var_js(groups, d);   // (sigma_j^(s))^2
  for (int g = 0; g < groups; ++g) {
    const auto gi = static_cast<size_t>(g);
    mu_js.row(g) = stats.mean[gi].transpose();
    var_js.row(g) = stats.covariance[gi].diagonal().transpose();
  }

  fc.mean_term.resize(d);
  fc.structural_term.resize(d);
  fc.interaction_term.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double bj = model.beta(j);
    fc.mean_term(j) = bj * bj * weighted_var(mu_js.col(j), stats.prior);
    fc.structural_term(j) =
        bj * bj * bj * bj * weighted_var(var_js.col(j), stats.prior) / (4.0 * fc.v_bar);
    fc.interaction_term(j) =
        2.0 * model.gamma * bj * weighted_cov(s_vals, mu_js.col(j), stats.prior);
  }

  fc.cross_mean = 0.0;
  fc.cross_structural = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j + 1; k < d; ++k) {
      const double bj = model.beta(j), bk = model.beta(k);
      fc.cross_mean += 2.0 * bj * bk * weighted_cov(mu_js.col(j), mu_js.col(k), stats.prior);
      fc.cross_structural += 2.0 * bj * bj * bk * bk *
                             weighted_cov(var_js.col(j), var_js.col(k), stats.prior) /
                             (4.0 * fc.v_bar);
    }
  }

  fc.approx_sum = fc.mean_term.sum() + fc.structural_term.sum() + fc.interaction_term.sum();
  fc.exact_indirect = report.total - report.direct_mean;
  fc.fmd_minus_direct = report.fmd - report.direct_mean;
  fc.smd_exact = report.smd;
  fc.smd_taylor = fc.structural_term.sum() + (fc.diagonal_sigma ? fc.cross_structural : 0.0);
  fc.structural_remainder = fc.smd_exact - fc.smd_taylor;
  fc.taylor_rel_error =
      fc.smd_exact > 0.0 ? std::abs(fc.smd_taylor - fc.smd_exact) / fc.smd_exact : 0.0;
  return fc;
}

double unfairness_ks(const std::vector<std::vector<double>>& scores_by_group) {
  const int m = static_cast<int>(scores_by_group.size());
  if (m < 2) throw TooFewGroups(m);
  for (int g = 0; g < m; ++g)
    if (scores_by_group[static_cast<size_t>(g)].empty()) throw EmptyGroup(g + 1);

  std::vector<std::vector<double>> sorted(scores_by_group);
  for (auto& v : sorted) std::sort(v.begin(), v.end());

  double worst = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const auto& u = sorted[static_cast<size_t>(a)];
      const auto& v = sorted[static_cast<size_t>(b)];
      const double nu = static_cast<double>(u.size());
      const double nv = static_cast<double>(v.size());
      size_t i = 0, j = 0;
      double d = 0.0;
      while (i < u.size() && j < v.size()) {
        const double x = std::min(u[i], v[j]);
        while (i < u.size() && u[i] <= x) ++i;  // step past ties before comparing ECDFs
        while (j < v.size() && v[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nu - static_cast<double>(j) / nv));
      }
      worst = std::max(worst, d);
    }
  }
  return std::min(worst, 1.0);
}

}  // namespace fairlin

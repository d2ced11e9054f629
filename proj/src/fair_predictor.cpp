#include "fairlin/fair_predictor.hpp"

#include <cmath>

#include "fairlin/errors.hpp"

namespace fairlin {

FairPredictor build_fair_predictor(const BaseLinearModel& base, const GroupStats& stats,
                                   double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw EpsilonOutOfRange(epsilon);

  FairPredictor fp;
  fp.epsilon = epsilon;
  fp.base = base;
  fp.stats = stats;
  fp.moments = score_moments(base, stats);

  const double root = std::sqrt(epsilon);
  const int m = stats.group_count();
  fp.mu_eps = (1.0 - root) * fp.moments.mean_bar * Eigen::VectorXd::Ones(m) +
              root * fp.moments.group_mean;
  fp.sigma_eps = (1.0 - root) * fp.moments.std_bar * Eigen::VectorXd::Ones(m) +
                 root * fp.moments.group_std;

  const double tol = degenerate_tol(fp.moments);
  int degenerate = 0;
  for (int g = 0; g < m; ++g)
    if (fp.moments.group_std(g) <= tol) ++degenerate;
  fp.all_degenerate = (degenerate == m);

  fp.scale.resize(m);
  for (int g = 0; g < m; ++g) {
    if (fp.moments.group_std(g) > tol) {
      fp.scale(g) = fp.sigma_eps(g) / fp.moments.group_std(g);
    } else if (epsilon == 1.0) {
      // sigma_eps == sigma_f exactly, so the base model is reproduced.
      fp.scale(g) = 1.0;
    } else if (fp.all_degenerate) {
      // Standardized score defined as 0: pure intercept model.
      fp.scale(g) = 0.0;
    } else {
      throw DegenerateScore(g + 1);
    }
  }
  return fp;
}

double fair_predict(const FairPredictor& fp, const Eigen::VectorXd& x, int s) {
  if (s < 1 || s > fp.group_count()) throw UnknownGroup(s, fp.group_count());
  if (x.size() != fp.base.dim())
    throw DimensionMismatch("probe has " + std::to_string(x.size()) + " features, model expects " +
                            std::to_string(fp.base.dim()));
  const auto g = static_cast<size_t>(s - 1);
  const double centered = (x - fp.stats.mean[g]).dot(fp.base.beta);
  return fp.scale(s - 1) * centered + fp.mu_eps(s - 1);
}

Eigen::VectorXd fair_predict_all(const FairPredictor& fp, const Dataset& data) {
  Eigen::VectorXd out(data.size());
  for (Eigen::Index i = 0; i < data.size(); ++i)
    out(i) = fair_predict(fp, data.x.row(i).transpose(), data.s[static_cast<size_t>(i)]);
  return out;
}

GroupCoefficients group_coefficients(const FairPredictor& fp) {
  const double tol = degenerate_tol(fp.moments);
  const int m = fp.group_count();
  for (int g = 0; g < m; ++g)
    if (fp.moments.group_std(g) <= tol && fp.epsilon != 1.0) throw DegenerateScore(g + 1);

  GroupCoefficients gc;
  gc.beta_eps.reserve(static_cast<size_t>(m));
  gc.intercept_eps.resize(m);
  for (int g = 0; g < m; ++g) {
    gc.beta_eps.push_back(fp.scale(g) * fp.base.beta);
    gc.intercept_eps(g) = fp.mu_eps(g) - fp.scale(g) * fp.stats.mean[static_cast<size_t>(g)].dot(fp.base.beta);
  }
  return gc;
}

double predict_cs22(const GroupwiseLinearModel& gm, const Eigen::VectorXd& p,
                    const Eigen::VectorXd& x, int s) {
  const int m = gm.group_count();
  if (p.size() != m) throw LengthMismatch("prior length must equal group count");
  if (s < 1 || s > m) throw UnknownGroup(s, m);
  const auto& beta = gm.beta_per_group.front();
  for (const auto& b : gm.beta_per_group)
    if ((b - beta).lpNorm<Eigen::Infinity>() > 1e-9 * (1.0 + beta.lpNorm<Eigen::Infinity>()))
      throw NotSharedSlope();
  return beta.dot(x) + p.dot(gm.intercept_per_group);
}

double predict_fs23(const GroupwiseLinearModel& gm, const GroupStats& stats,
                    const Eigen::VectorXd& x, int s) {
  const int m = gm.group_count();
  if (stats.group_count() != m) throw LengthMismatch("stats group count must match model");
  if (s < 1 || s > m) throw UnknownGroup(s, m);

  double norm_bar = 0.0;
  double mean_term = 0.0;
  for (int g = 0; g < m; ++g) {
    const auto gi = static_cast<size_t>(g);
    const double norm = gm.beta_per_group[gi].norm();
    if (norm <= 1e-12) throw ZeroSlopeGroup(g + 1);
    norm_bar += stats.prior(g) * norm;
    mean_term += stats.prior(g) * gm.beta_per_group[gi].dot(stats.mean[gi]);
  }
  const auto gi = static_cast<size_t>(s - 1);
  const Eigen::VectorXd unit = gm.beta_per_group[gi] / gm.beta_per_group[gi].norm();
  return norm_bar * unit.dot(x - stats.mean[gi]) + mean_term;
}

}  // namespace fairlin

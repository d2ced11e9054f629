#include "fairlin/group_stats.hpp"

#include <cmath>

#include "fairlin/base_model.hpp"
#include "fairlin/errors.hpp"

namespace fairlin {

GroupStats estimate_group_stats(const Dataset& data, double diag_reg) {
  if (diag_reg < 0.0) throw InvalidArgument("diagonal regularizer must be >= 0");
  const int m = data.group_count();
  const Eigen::Index n = data.size();
  const Eigen::Index d = data.dim();

  std::vector<std::int64_t> counts(static_cast<size_t>(m), 0);
  for (int label : data.s) counts[static_cast<size_t>(label - 1)]++;
  for (int g = 0; g < m; ++g)
    if (counts[static_cast<size_t>(g)] < 2)
      throw GroupTooSmall(g + 1, counts[static_cast<size_t>(g)]);

  GroupStats stats;
  stats.prior.resize(m);
  stats.mean.assign(static_cast<size_t>(m), Eigen::VectorXd::Zero(d));
  stats.covariance.assign(static_cast<size_t>(m), Eigen::MatrixXd::Zero(d, d));
  stats.count = counts;
  stats.labels = data.group_labels;

  for (Eigen::Index i = 0; i < n; ++i)
    stats.mean[static_cast<size_t>(data.s[static_cast<size_t>(i)] - 1)] += data.x.row(i).transpose();
  for (int g = 0; g < m; ++g) {
    stats.prior(g) = static_cast<double>(counts[static_cast<size_t>(g)]) / static_cast<double>(n);
    stats.mean[static_cast<size_t>(g)] /= static_cast<double>(counts[static_cast<size_t>(g)]);
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto g = static_cast<size_t>(data.s[static_cast<size_t>(i)] - 1);
    Eigen::VectorXd centered = data.x.row(i).transpose() - stats.mean[g];
    stats.covariance[g].selfadjointView<Eigen::Lower>().rankUpdate(centered);
  }
  for (int g = 0; g < m; ++g) {
    auto& sigma = stats.covariance[static_cast<size_t>(g)];
    sigma = sigma.selfadjointView<Eigen::Lower>();
    sigma /= static_cast<double>(counts[static_cast<size_t>(g)]);
    sigma.diagonal().array() += diag_reg;
  }
  return stats;
}

ScoreMoments score_moments(const BaseLinearModel& model, const GroupStats& stats) {
  if (model.dim() != stats.dim())
    throw DimensionMismatch("model has " + std::to_string(model.dim()) +
                            " coefficients but stats have dimension " +
                            std::to_string(stats.dim()));
  const int m = stats.group_count();
  ScoreMoments sm;
  sm.group_mean.resize(m);
  sm.group_std.resize(m);
  for (int g = 0; g < m; ++g) {
    const auto gi = static_cast<size_t>(g);
    sm.group_mean(g) =
        stats.mean[gi].dot(model.beta) + model.gamma * static_cast<double>(g + 1) + model.beta0;
    double var = model.beta.dot(stats.covariance[gi] * model.beta);
    sm.group_std(g) = std::sqrt(std::max(var, 0.0));
  }
  sm.mean_bar = stats.prior.dot(sm.group_mean);
  sm.std_bar = stats.prior.dot(sm.group_std);
  return sm;
}

}  // namespace fairlin

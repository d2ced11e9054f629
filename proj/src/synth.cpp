#include "fairlin/synth.hpp"

#include <cmath>

#include "fairlin/errors.hpp"
#include "fairlin/normal.hpp"
#include "fairlin/rng.hpp"

namespace fairlin {

namespace {

// Stream ids of the generator's draw phases. Frozen: changing them breaks
// golden files and requires an rng version bump.
enum Stream : std::uint64_t {
  kStreamLabels = 0,
  kStreamFeatureParams = 1,
  kStreamCorrelation = 2,
  kStreamRows = 3,
  kStreamNoise = 4,
};

Eigen::MatrixXd normalized_gram_correlation(CounterRng& rng, Eigen::Index d) {
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = rng.next_gaussian();
  Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::VectorXd inv_root = gram.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return inv_root.asDiagonal() * gram * inv_root.asDiagonal();
}

// Symmetric PSD square root; tolerates semidefinite inputs (zero stds).
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.eigenvalues().minCoeff() < -1e-10 * std::max(sigma.trace(), 1.0))
    throw NonPSD("covariance has eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

void SynthConfig::validate() const {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (n < 4) throw InvalidArgument("n must be >= 4");
  if (t_y < 0.0 || t_mean < 0.0 || t_std < 0.0)
    throw InvalidArgument("t_y, t_mean, t_std must be >= 0");
  if (t_corr < 0.0 || t_corr > 1.0) throw InvalidArgument("t_corr must be in [0, 1]");
  if (noise_std < 0.0) throw InvalidArgument("noise_std must be >= 0");
}

BaseLinearModel SynthGroundTruth::true_model() const {
  BaseLinearModel m;
  m.beta = beta_true;
  m.gamma = gamma_true;
  m.beta0 = beta0_true;
  m.aware = true;
  return m;
}

GroupStats SynthGroundTruth::population_stats() const {
  GroupStats stats;
  stats.prior.resize(2);
  stats.prior << 1.0 - q, q;
  stats.mean = mu;
  stats.covariance = sigma;
  stats.count = {0, 0};  // population-level, no sample counts
  stats.labels = {"1", "2"};
  return stats;
}

std::pair<Dataset, SynthGroundTruth> generate(const SynthConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = cfg.d;
  const Eigen::Index n = cfg.n;

  SynthGroundTruth gt;
  gt.q = 1.0 - norm_cdf(cfg.tau);
  gt.beta_true = Eigen::VectorXd::Ones(d);
  gt.gamma_true = cfg.t_y;
  gt.beta0_true = 0.0;

  // Group labels: shifted Bernoulli(q) + 1.
  std::vector<int> labels(static_cast<size_t>(n));
  {
    CounterRng rng(cfg.seed, kStreamLabels);
    for (auto& s : labels) s = rng.next_unit() < gt.q ? 2 : 1;
  }

  // Per-feature population parameters, feature index order:
  // p_j, three Binomial(3, p_j) trials, then sigma_j^(1) ~ U[0, 2].
  Eigen::VectorXd mu1(d), sd1(d);
  {
    CounterRng rng(cfg.seed, kStreamFeatureParams);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double p = rng.next_unit();
      int hits = 0;
      for (int t = 0; t < 3; ++t) hits += rng.next_unit() < p ? 1 : 0;
      mu1(j) = static_cast<double>(hits);
      sd1(j) = 2.0 * rng.next_unit();
    }
  }
  Eigen::VectorXd mu2 = mu1.array() + cfg.t_mean;
  Eigen::VectorXd sd2 = sd1.array() + std::sqrt(cfg.t_std);
  gt.mu = {mu1, mu2};

  // Correlation matrices per the three t_corr regimes.
  Eigen::MatrixXd rho1, rho2;
  {
    CounterRng rng(cfg.seed, kStreamCorrelation);
    if (cfg.t_corr == 0.0) {
      rho1 = Eigen::MatrixXd::Identity(d, d);
      rho2 = rho1;
    } else if (cfg.t_corr == 1.0) {
      rho1 = normalized_gram_correlation(rng, d);
      rho2 = rho1;
    } else {
      Eigen::MatrixXd c1 = normalized_gram_correlation(rng, d);
      Eigen::MatrixXd c2 = normalized_gram_correlation(rng, d);
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
      rho1 = cfg.t_corr * c1 + (1.0 - cfg.t_corr) * eye;
      rho2 = cfg.t_corr * c2 + (1.0 - cfg.t_corr) * eye;
    }
  }
  gt.sigma = {sd1.asDiagonal() * rho1 * sd1.asDiagonal(),
              sd2.asDiagonal() * rho2 * sd2.asDiagonal()};

  const Eigen::MatrixXd root1 = psd_sqrt(gt.sigma[0]);
  const Eigen::MatrixXd root2 = psd_sqrt(gt.sigma[1]);

  // Feature rows: d standard normals per row, row-major order.
  Eigen::MatrixXd x(n, d);
  {
    CounterRng rng(cfg.seed, kStreamRows);
    Eigen::VectorXd z(d);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.next_gaussian();
      if (labels[static_cast<size_t>(i)] == 1)
        x.row(i) = (gt.mu[0] + root1 * z).transpose();
      else
        x.row(i) = (gt.mu[1] + root2 * z).transpose();
    }
  }

  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i)
    y(i) = x.row(i).sum() + cfg.t_y * static_cast<double>(labels[static_cast<size_t>(i)]);
  if (cfg.noise_std > 0.0) {
    CounterRng rng(cfg.seed, kStreamNoise);
    for (Eigen::Index i = 0; i < n; ++i) y(i) += cfg.noise_std * rng.next_gaussian();
  }

  return {Dataset::create(std::move(x), std::move(labels), std::move(y)), std::move(gt)};
}

UnfairnessReport population_report(const SynthGroundTruth& gt) {
  return unfairness_gaussian(gt.true_model(), gt.population_stats());
}

}  // namespace fairlin

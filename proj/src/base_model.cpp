#include "fairlin/base_model.hpp"

#include <cmath>

#include "fairlin/errors.hpp"

namespace fairlin {

namespace {

// Least squares solve of the centered, optionally ridge-augmented design.
// Rank deficiency is only an error when nothing regularizes it.
Eigen::VectorXd solve_ls(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs, double ridge,
                         const char* what) {
  const Eigen::Index k = design.cols();
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  if (ridge > 0.0) {
    a.resize(design.rows() + k, k);
    a.topRows(design.rows()) = design;
    a.bottomRows(k) = std::sqrt(ridge) * Eigen::MatrixXd::Identity(k, k);
    b.resize(design.rows() + k);
    b.head(design.rows()) = rhs;
    b.tail(k).setZero();
  } else {
    a = design;
    b = rhs;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < k)
    throw SingularDesign(std::string(what) + ": design rank " + std::to_string(qr.rank()) +
                         " < " + std::to_string(k) + " columns");
  return qr.solve(b);
}

}  // namespace

BaseLinearModel fit_ols(const Dataset& data, bool aware, double ridge) {
  if (ridge < 0.0) throw InvalidArgument("ridge penalty must be >= 0");
  const Eigen::Index n = data.size();
  const Eigen::Index d = data.dim();
  if (n <= d + 2)
    throw InvalidArgument("need n > d + 2 samples to fit (n = " + std::to_string(n) +
                          ", d = " + std::to_string(d) + ")");

  const Eigen::Index k = aware ? d + 1 : d;
  Eigen::MatrixXd design(n, k);
  design.leftCols(d) = data.x;
  if (aware)
    for (Eigen::Index i = 0; i < n; ++i)
      design(i, d) = static_cast<double>(data.s[static_cast<size_t>(i)]);

  // Center columns and target so the intercept stays unpenalized.
  Eigen::RowVectorXd col_mean = design.colwise().mean();
  design.rowwise() -= col_mean;
  const double y_mean = data.y.mean();
  Eigen::VectorXd yc = data.y.array() - y_mean;

  Eigen::VectorXd theta = solve_ls(design, yc, ridge, "fit_ols");

  BaseLinearModel model;
  model.beta = theta.head(d);
  model.gamma = aware ? theta(d) : 0.0;
  model.aware = aware;
  model.beta0 = y_mean - col_mean.head(d).dot(model.beta);
  if (aware) model.beta0 -= col_mean(d) * model.gamma;
  return model;
}

GroupwiseLinearModel fit_groupwise(const Dataset& data, bool shared_slope, bool with_intercept) {
  const Eigen::Index n = data.size();
  const Eigen::Index d = data.dim();
  const int m = data.group_count();

  std::vector<std::int64_t> counts(static_cast<size_t>(m), 0);
  for (int label : data.s) counts[static_cast<size_t>(label - 1)]++;

  GroupwiseLinearModel gm;
  gm.shared_slope = shared_slope;
  gm.beta_per_group.assign(static_cast<size_t>(m), Eigen::VectorXd::Zero(d));
  gm.intercept_per_group.resize(m);

  if (shared_slope) {
    for (int g = 0; g < m; ++g)
      if (counts[static_cast<size_t>(g)] < 2)
        throw GroupTooSmall(g + 1, counts[static_cast<size_t>(g)]);
    if (n <= d + m)
      throw InvalidArgument("need n > d + M samples for the shared-slope fit");

    // Group one-hot columns replace the global intercept.
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(n, d + m);
    design.leftCols(d) = data.x;
    for (Eigen::Index i = 0; i < n; ++i)
      design(i, d + data.s[static_cast<size_t>(i)] - 1) = 1.0;
    Eigen::VectorXd theta = solve_ls(design, data.y, 0.0, "fit_groupwise");
    for (int g = 0; g < m; ++g) {
      gm.beta_per_group[static_cast<size_t>(g)] = theta.head(d);
      gm.intercept_per_group(g) = theta(d + g);
    }
    return gm;
  }

  const Eigen::Index min_rows = with_intercept ? d + 3 : d + 2;
  for (int g = 0; g < m; ++g) {
    const auto n_g = counts[static_cast<size_t>(g)];
    if (n_g < min_rows) throw GroupTooSmall(g + 1, n_g);

    Eigen::MatrixXd xg(n_g, d);
    Eigen::VectorXd yg(n_g);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (data.s[static_cast<size_t>(i)] != g + 1) continue;
      xg.row(r) = data.x.row(i);
      yg(r) = data.y(i);
      ++r;
    }

    if (with_intercept) {
      Eigen::RowVectorXd xm = xg.colwise().mean();
      xg.rowwise() -= xm;
      const double ym = yg.mean();
      yg.array() -= ym;
      Eigen::VectorXd beta = solve_ls(xg, yg, 0.0, "fit_groupwise");
      gm.beta_per_group[static_cast<size_t>(g)] = beta;
      gm.intercept_per_group(g) = ym - xm.dot(beta);
    } else {
      Eigen::VectorXd beta = solve_ls(xg, yg, 0.0, "fit_groupwise");
      gm.beta_per_group[static_cast<size_t>(g)] = beta;
      gm.intercept_per_group(g) = 0.0;
    }
  }
  return gm;
}

double predict(const BaseLinearModel& model, const Eigen::VectorXd& x, int s) {
  if (x.size() != model.dim())
    throw DimensionMismatch("probe has " + std::to_string(x.size()) + " features, model expects " +
                            std::to_string(model.dim()));
  double acc = 0.0;  // fixed left-to-right order for reproducibility
  for (Eigen::Index j = 0; j < x.size(); ++j) acc += model.beta(j) * x(j);
  return acc + model.gamma * static_cast<double>(s) + model.beta0;
}

Eigen::VectorXd predict_all(const BaseLinearModel& model, const Dataset& data) {
  Eigen::VectorXd out(data.size());
  for (Eigen::Index i = 0; i < data.size(); ++i)
    out(i) = predict(model, data.x.row(i).transpose(), data.s[static_cast<size_t>(i)]);
  return out;
}

}  // namespace fairlin

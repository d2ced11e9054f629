#include <doctest.h>

#include "fairlin/base_model.hpp"
#include "fairlin/errors.hpp"
#include "fairlin/rng.hpp"

using namespace fairlin;

namespace {

// y = <x, beta> + gamma s + beta0, optional noise
Dataset generated(std::uint64_t seed, Eigen::Index n, const Eigen::VectorXd& beta, double gamma,
                  double beta0, double noise = 0.0) {
  CounterRng rng(seed, 0);
  const Eigen::Index d = beta.size();
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  std::vector<int> s(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rng.next_gaussian();
    s[static_cast<size_t>(i)] = 1 + static_cast<int>(rng.next_u64() % 2);
    y(i) = x.row(i).dot(beta) + gamma * s[static_cast<size_t>(i)] + beta0 +
           noise * rng.next_gaussian();
  }
  return Dataset::create(std::move(x), std::move(s), std::move(y));
}

}  // namespace

TEST_CASE("fit_ols recovers a noiseless model exactly") {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(3);
  beta(0) = 1.0;
  Dataset data = generated(11, 60, beta, 2.0, -1.0);
  BaseLinearModel m = fit_ols(data, true);
  CHECK((m.beta - beta).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK(m.gamma == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(m.beta0 == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("fit_ols on constant outcome returns the mean") {
  CounterRng rng(4, 0);
  Eigen::MatrixXd x(20, 2);
  for (Eigen::Index i = 0; i < 20; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) x(i, j) = rng.next_gaussian();
  std::vector<int> s;
  for (int i = 0; i < 20; ++i) s.push_back(1 + i % 2);
  Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 7.5);
  Dataset data = Dataset::create(x, s, y);

  BaseLinearModel m = fit_ols(data, true);
  CHECK(m.beta.lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(std::abs(m.gamma) < 1e-10);
  CHECK(m.beta0 == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("fit_ols matches an explicit normal-equations oracle") {
  Eigen::VectorXd beta(5);
  beta << 0.3, -1.2, 0.0, 2.5, 0.7;
  Dataset data = generated(99, 200, beta, 1.1, 0.4, 0.8);
  BaseLinearModel m = fit_ols(data, true);

  // independent dense solve of [X S 1] theta = y
  const Eigen::Index n = data.size();
  Eigen::MatrixXd a(n, 7);
  a.leftCols(5) = data.x;
  for (Eigen::Index i = 0; i < n; ++i) a(i, 5) = data.s[static_cast<size_t>(i)];
  a.col(6).setOnes();
  Eigen::VectorXd theta = (a.transpose() * a).fullPivLu().solve(a.transpose() * data.y);

  CHECK((m.beta - theta.head(5)).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK(m.gamma == doctest::Approx(theta(5)).epsilon(1e-8));
  CHECK(m.beta0 == doctest::Approx(theta(6)).epsilon(1e-8));

  // normal-equations residual of the fitted coefficients
  Eigen::VectorXd packed(7);
  packed << m.beta, m.gamma, m.beta0;
  const double rel = (a.transpose() * (a * packed - data.y)).norm() /
                     (a.transpose() * data.y).norm();
  CHECK(rel < 1e-8);
}

TEST_CASE("unaware fit has gamma exactly zero") {
  Eigen::VectorXd beta(2);
  beta << 1.0, -1.0;
  Dataset data = generated(5, 80, beta, 3.0, 0.0, 0.1);
  BaseLinearModel m = fit_ols(data, false);
  CHECK(m.gamma == 0.0);
  CHECK(m.aware == false);
}

TEST_CASE("duplicated rows leave the ridge-free fit unchanged") {
  Eigen::VectorXd beta(3);
  beta << 0.5, 1.5, -2.0;
  Dataset data = generated(17, 50, beta, 0.9, 0.2, 0.5);
  std::vector<Eigen::Index> twice;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    twice.push_back(i);
    twice.push_back(i);
  }
  BaseLinearModel a = fit_ols(data, true);
  BaseLinearModel b = fit_ols(data.subset(twice), true);
  CHECK((a.beta - b.beta).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-10));
  CHECK(a.beta0 == doctest::Approx(b.beta0).epsilon(1e-10));
}

TEST_CASE("ridge shrinks the penalized coefficient norm monotonically") {
  Eigen::VectorXd beta(4);
  beta << 2.0, -3.0, 1.0, 0.5;
  Dataset data = generated(23, 120, beta, 1.5, -0.7, 1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (double ridge : {0.0, 0.1, 1.0, 10.0, 100.0}) {
    BaseLinearModel m = fit_ols(data, true, ridge);
    const double norm2 = m.beta.squaredNorm() + m.gamma * m.gamma;
    CHECK(norm2 <= previous + 1e-12);
    previous = norm2;
  }
}

TEST_CASE("rank-deficient design raises SingularDesign") {
  CounterRng rng(3, 0);
  Eigen::MatrixXd x(30, 2);
  for (Eigen::Index i = 0; i < 30; ++i) {
    x(i, 0) = rng.next_gaussian();
    x(i, 1) = 2.0 * x(i, 0);  // collinear
  }
  std::vector<int> s;
  for (int i = 0; i < 30; ++i) s.push_back(1 + i % 2);
  Eigen::VectorXd y = x.col(0);
  Dataset data = Dataset::create(x, s, y);
  CHECK_THROWS_AS(fit_ols(data, true, 0.0), SingularDesign);
  CHECK_NOTHROW(fit_ols(data, true, 1e-6));  // ridge restores identifiability
}

TEST_CASE("fit_groupwise recovers exact group intercepts") {
  CounterRng rng(12, 0);
  Eigen::MatrixXd x(40, 2);
  Eigen::VectorXd y(40);
  std::vector<int> s;
  Eigen::VectorXd beta(2);
  beta << 1.0, -0.5;
  for (Eigen::Index i = 0; i < 40; ++i) {
    x(i, 0) = rng.next_gaussian();
    x(i, 1) = rng.next_gaussian();
    const int g = 1 + static_cast<int>(i % 2);
    s.push_back(g);
    y(i) = x.row(i).dot(beta) + (g == 1 ? 0.0 : 3.0);
  }
  Dataset data = Dataset::create(x, s, y);
  GroupwiseLinearModel gm = fit_groupwise(data, /*shared_slope=*/true);
  CHECK(gm.intercept_per_group(0) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(gm.intercept_per_group(1) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK((gm.beta_per_group[0] - beta).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK((gm.beta_per_group[0] - gm.beta_per_group[1]).norm() == doctest::Approx(0.0));
}

TEST_CASE("identical group laws give near-identical per-group slopes") {
  Eigen::VectorXd beta(2);
  beta << 1.0, 2.0;
  Dataset data = generated(66, 10000, beta, 0.0, 0.0, 0.5);
  GroupwiseLinearModel gm = fit_groupwise(data, /*shared_slope=*/false);
  CHECK((gm.beta_per_group[0] - gm.beta_per_group[1]).lpNorm<Eigen::Infinity>() < 0.1);
}

TEST_CASE("per-group fit matches a per-group normal-equations oracle") {
  Eigen::VectorXd beta(3);
  beta << 0.4, -0.9, 1.7;
  Dataset data = generated(29, 90, beta, 2.0, 1.0, 0.3);
  GroupwiseLinearModel gm = fit_groupwise(data, /*shared_slope=*/false);

  for (int g = 1; g <= 2; ++g) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < data.size(); ++i)
      if (data.s[static_cast<size_t>(i)] == g) rows.push_back(i);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 4);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (size_t k = 0; k < rows.size(); ++k) {
      a.row(static_cast<Eigen::Index>(k)).head(3) = data.x.row(rows[k]);
      a(static_cast<Eigen::Index>(k), 3) = 1.0;
      y(static_cast<Eigen::Index>(k)) = data.y(rows[k]);
    }
    Eigen::VectorXd theta = (a.transpose() * a).fullPivLu().solve(a.transpose() * y);
    CHECK((gm.beta_per_group[static_cast<size_t>(g - 1)] - theta.head(3)).lpNorm<Eigen::Infinity>() <
          1e-8);
    CHECK(gm.intercept_per_group(g - 1) == doctest::Approx(theta(3)).epsilon(1e-8));
  }
}

TEST_CASE("no-intercept per-group fit solves the uncentered system") {
  Eigen::VectorXd beta(2);
  beta << 1.0, -2.0;
  Dataset data = generated(41, 80, beta, 4.0, 0.0, 0.0);
  GroupwiseLinearModel gm = fit_groupwise(data, /*shared_slope=*/false, /*with_intercept=*/false);
  for (int g = 1; g <= 2; ++g) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < data.size(); ++i)
      if (data.s[static_cast<size_t>(i)] == g) rows.push_back(i);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (size_t k = 0; k < rows.size(); ++k) {
      a.row(static_cast<Eigen::Index>(k)) = data.x.row(rows[k]);
      y(static_cast<Eigen::Index>(k)) = data.y(rows[k]);
    }
    Eigen::VectorXd theta = (a.transpose() * a).fullPivLu().solve(a.transpose() * y);
    CHECK((gm.beta_per_group[static_cast<size_t>(g - 1)] - theta).lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK(gm.intercept_per_group(g - 1) == 0.0);
  }
}

TEST_CASE("shared-slope fit and aware OLS agree on fitted values when M=2") {
  Eigen::VectorXd beta(2);
  beta << 1.3, -0.2;
  Dataset data = generated(52, 150, beta, 0.8, 0.1, 0.4);
  BaseLinearModel aware = fit_ols(data, true);
  GroupwiseLinearModel gm = fit_groupwise(data, /*shared_slope=*/true);
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const int s = data.s[static_cast<size_t>(i)];
    const double via_aware = predict(aware, data.x.row(i).transpose(), s);
    const double via_groupwise = gm.beta_per_group[0].dot(data.x.row(i).transpose()) +
                                 gm.intercept_per_group(s - 1);
    CHECK(via_aware == doctest::Approx(via_groupwise).epsilon(1e-8));
  }
}

TEST_CASE("predict: trivial forms and the scalar-loop oracle") {
  BaseLinearModel constant;
  constant.beta = Eigen::VectorXd::Zero(3);
  constant.beta0 = 7.0;
  CHECK(predict(constant, Eigen::Vector3d(1, 2, 3), 2) == 7.0);

  BaseLinearModel slope;
  slope.beta = Eigen::Vector2d(1.0, 0.0);
  slope.gamma = 1.0;
  CHECK(predict(slope, Eigen::Vector2d(2.0, 9.0), 2) == 4.0);

  CounterRng rng(8, 0);
  BaseLinearModel m;
  m.beta = Eigen::VectorXd(6);
  Eigen::VectorXd x(6);
  for (int j = 0; j < 6; ++j) {
    m.beta(j) = rng.next_gaussian();
    x(j) = rng.next_gaussian();
  }
  m.gamma = rng.next_gaussian();
  m.beta0 = rng.next_gaussian();
  double acc = 0.0;
  for (int j = 0; j < 6; ++j) acc += m.beta(j) * x(j);
  acc += m.gamma * 3.0 + m.beta0;
  CHECK(predict(m, x, 3) == acc);  // bitwise: same summation order
}

TEST_CASE("predict rejects dimension mismatches") {
  BaseLinearModel m;
  m.beta = Eigen::Vector2d(1.0, 2.0);
  CHECK_THROWS_AS(predict(m, Eigen::Vector3d(1, 2, 3), 1), DimensionMismatch);
}

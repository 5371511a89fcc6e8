#include <doctest.h>

#include <cmath>

#include "mggm/errors.hpp"
#include "mggm/regression.hpp"
#include "mggm/rng.hpp"
#include "mggm/tuning.hpp"
#include "oracles.hpp"

using namespace mggm;

namespace {

Dataset tiny_dataset() {
  Matrix a(1, 2), b(1, 2);
  a << 1.0, 2.0;
  b << 3.0, 4.0;
  return Dataset::from_samples({a, b});
}

Dataset random_dataset(int n, int p, int q, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> samples;
  for (int k = 0; k < n; ++k) {
    Matrix x(p, q);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) x(i, j) = rng.normal();
    samples.push_back(std::move(x));
  }
  return Dataset::from_samples(std::move(samples));
}

GraphKind band_kind() { return GraphKind{GraphFamily::band, 1.0, 0.05}; }

}  // namespace

TEST_CASE("row samples are the centered rows, laid out sample-major") {
  const Dataset d = tiny_dataset();
  const RowView v = extract_row_samples(d);
  CHECK(v.z.rows() == 2);
  CHECK(v.z.cols() == 2);
  CHECK(v.z(0, 0) == -1.0);
  CHECK(v.z(1, 0) == -1.0);
  CHECK(v.z(0, 1) == 1.0);
  CHECK(v.z(1, 1) == 1.0);

  const Dataset r = random_dataset(4, 3, 5, 21);
  const RowView rv = extract_row_samples(r);
  // Column k*p + l is row l of centered sample k.
  CHECK((rv.z.col(2 * 3 + 1) -
         (r.samples[2].row(1) - r.mean_hat.row(1)).transpose())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  for (int i = 0; i < rv.q; ++i) {
    CHECK(std::fabs(rv.z.row(i).sum()) < 1e-8 * rv.z.cols());
  }
}

TEST_CASE("row covariance") {
  const RowView v = extract_row_samples(tiny_dataset());
  const RowCovariance rc = row_covariance(v);
  CHECK(rc.psi_hat(0, 0) == doctest::Approx(2.0));
  CHECK(rc.psi_hat(0, 1) == doctest::Approx(2.0));
  CHECK(rc.psi_hat(1, 1) == doctest::Approx(2.0));

  // Constant column triggers the degenerate-data error naming the column.
  Matrix a(1, 3), b(1, 3);
  a << 1.0, 7.0, 2.0;
  b << 3.0, 7.0, 4.0;
  const RowView bad = extract_row_samples(Dataset::from_samples({a, b}));
  CHECK_THROWS_WITH_AS(row_covariance(bad), doctest::Contains("column 1"),
                       DegenerateDataError);

  // Identity model: psi_hat close to the identity once n*p is large.
  const Dataset big = random_dataset(50, 1000, 8, 5);
  const RowCovariance big_rc = row_covariance(extract_row_samples(big));
  CHECK((big_rc.psi_hat - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("gram from the dataset agrees with the row-view gram") {
  const Dataset d = random_dataset(6, 7, 5, 33);
  const RowGram a = build_row_gram(extract_row_samples(d));
  const RowGram b = build_row_gram(d);
  CHECK((a.s - b.s).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((a.cov.psi_hat - b.cov.psi_hat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("full shrinkage for a large enough penalty") {
  const Dataset d = random_dataset(5, 20, 6, 44);
  LassoConfig cfg;
  cfg.delta = 1e6;
  const Coefficients fit = lasso_fit(extract_row_samples(d), 2, cfg);
  CHECK(fit.by_column.cwiseAbs().maxCoeff() == 0.0);
  CHECK(fit.kkt_residual < cfg.kkt_tol);
}

TEST_CASE("zero penalty with two columns reduces to the OLS slope") {
  const Dataset d = random_dataset(4, 50, 2, 55);
  LassoConfig cfg;
  cfg.delta = 0.0;
  const RowView v = extract_row_samples(d);
  const Coefficients fit = lasso_fit(v, 0, cfg);
  // Regression of column 0 on column 1 over the centered row samples.
  const double sxy = v.z.row(1).dot(v.z.row(0));
  const double sxx = v.z.row(1).squaredNorm();
  CHECK(fit.by_column[1] == doctest::Approx(sxy / sxx).epsilon(1e-8));
  CHECK(fit.by_column[0] == 0.0);
}

TEST_CASE("single-predictor fits match the soft-threshold solution") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = random_dataset(3, 30, 2, 1000 + trial);
    const RowGram g = build_row_gram(extract_row_samples(d));
    LassoConfig cfg;
    cfg.delta = 0.2 + 2.0 * rng.uniform();
    const int target = trial % 2;
    const int other = 1 - target;
    const Coefficients fit = lasso_fit(g, target, cfg);

    // Scaled problem: v = mean square of the scaled predictor, c = mean cross
    // product, penalty theta; analytic argmin sign(c) * max(|c| - theta, 0)/v.
    const double dinv = 1.0 / std::sqrt(g.cov.diag[other]);
    const double v = g.s(other, other) * dinv * dinv;
    const double c = g.s(other, target) * dinv;
    const double theta = fit.penalty;
    const double analytic =
        (c > 0 ? 1.0 : -1.0) * std::max(std::fabs(c) - theta, 0.0) / v;
    CHECK(oracle::lasso_1d_grid_ref(v, c, theta) ==
          doctest::Approx(analytic).epsilon(1e-3).scale(1.0));
    CHECK(fit.by_column[other] * std::sqrt(g.cov.diag[other]) ==
          doctest::Approx(analytic).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("KKT certificate holds at the reported tolerance") {
  const Dataset d = random_dataset(4, 60, 12, 66);
  const RowGram g = build_row_gram(extract_row_samples(d));
  for (double delta : {0.3, 1.0, 2.5}) {
    LassoConfig cfg;
    cfg.delta = delta;
    for (int j = 0; j < d.q; ++j) {
      const Coefficients fit = lasso_fit(g, j, cfg);
      const Vector grad = scaled_gradient(g, fit);
      int a = 0;
      for (int c = 0; c < d.q; ++c) {
        if (c == j) continue;
        const double alpha_c = fit.by_column[c] * std::sqrt(g.cov.diag[c]);
        if (alpha_c == 0.0) {
          CHECK(std::fabs(grad[a]) <= fit.penalty + cfg.kkt_tol);
        } else {
          CHECK(std::fabs(grad[a] + fit.penalty * (alpha_c > 0 ? 1.0 : -1.0)) <=
                cfg.kkt_tol * 1.0001);
        }
        ++a;
      }
    }
  }
}

TEST_CASE("coordinate descent objective is non-increasing across sweeps") {
  // Reference implementation of the same update rule, tracking the objective.
  const Dataset d = random_dataset(3, 40, 8, 77);
  const RowGram g = build_row_gram(extract_row_samples(d));
  const int target = 3;
  LassoConfig cfg;
  cfg.delta = 0.8;
  const Coefficients fit = lasso_fit(g, target, cfg);
  const double theta = fit.penalty;

  const int m = d.q - 1;
  std::vector<int> cols;
  for (int c = 0; c < d.q; ++c)
    if (c != target) cols.push_back(c);
  Matrix h(m, m);
  Vector hv(m);
  for (int a = 0; a < m; ++a) {
    hv[a] = g.s(cols[a], target) / std::sqrt(g.cov.diag[cols[a]]);
    for (int b = 0; b < m; ++b) {
      h(a, b) = g.s(cols[a], cols[b]) /
                std::sqrt(g.cov.diag[cols[a]] * g.cov.diag[cols[b]]);
    }
  }
  auto objective = [&](const Vector& alpha) {
    return 0.5 * alpha.dot(h * alpha) - hv.dot(alpha) + theta * alpha.cwiseAbs().sum();
  };
  Vector alpha = Vector::Zero(m);
  double prev = objective(alpha);
  for (int sweep = 0; sweep < 200; ++sweep) {
    for (int a = 0; a < m; ++a) {
      const double z = hv[a] - h.row(a).dot(alpha) + h(a, a) * alpha[a];
      const double soft = std::fabs(z) > theta ? (z > 0 ? z - theta : z + theta) : 0.0;
      alpha[a] = soft / h(a, a);
    }
    const double current = objective(alpha);
    CHECK(current <= prev + 1e-12);
    prev = current;
  }
  // The reference lands where the production solver does.
  for (int a = 0; a < m; ++a) {
    CHECK(alpha[a] / std::sqrt(g.cov.diag[cols[a]]) ==
          doctest::Approx(fit.by_column[cols[a]]).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("zero_component bookkeeping") {
  const Dataset d = random_dataset(3, 25, 3, 88);
  LassoConfig cfg;
  cfg.delta = 0.1;
  const CoefficientSet cs = fit_all(extract_row_samples(d), cfg);

  const Coefficients& beta = cs.fits[0];  // indexed over columns {1, 2}
  const Coefficients dropped = zero_component(beta, 2);
  CHECK(dropped.by_column[2] == 0.0);
  CHECK(dropped.by_column[1] == beta.by_column[1]);

  // Dropping the target itself is the identity.
  const Coefficients same = zero_component(beta, 0);
  CHECK((same.by_column - beta.by_column).cwiseAbs().maxCoeff() == 0.0);

  // At most one entry differs, for every pair.
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const Coefficients z = zero_component(cs.fits[j], i);
      int changed = 0;
      for (int c = 0; c < 3; ++c) {
        if (z.by_column[c] != cs.fits[j].by_column[c]) ++changed;
      }
      CHECK(changed <= 1);
    }
  }
  CHECK_THROWS_AS(zero_component(beta, 5), ConfigError);

  // Zero vector stays zero.
  LassoConfig big;
  big.delta = 1e9;
  const Coefficients zero_fit = lasso_fit(extract_row_samples(d), 1, big);
  const Coefficients still_zero = zero_component(zero_fit, 0);
  CHECK(still_zero.by_column.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("per-column fits are order independent") {
  const Dataset d = random_dataset(3, 30, 6, 99);
  const RowGram g = build_row_gram(d);
  LassoConfig cfg;
  cfg.delta = 1.0;
  const CoefficientSet forward = fit_all(g, cfg);
  // Fit in reverse order; results must be identical.
  for (int j = d.q - 1; j >= 0; --j) {
    const Coefficients fit = lasso_fit(g, j, cfg);
    CHECK((fit.by_column - forward.fits[j].by_column).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("lasso is consistent on a sparse model and improves with more samples") {
  // Tridiagonal column precision (two nonzero coefficients per target) with
  // independent rows; the population coefficients are -gamma_{-j,j}/gamma_jj.
  const int q = 50;
  Matrix gamma = Matrix::Identity(q, q);
  for (int i = 0; i + 1 < q; ++i) gamma(i, i + 1) = gamma(i + 1, i) = 0.4;
  PrecisionMatrix pg{gamma, BoolMatrix::Constant(q, q, true)};

  Eigen::LLT<Matrix> llt(invert_spd(pg));
  const Matrix l_psi = llt.matrixL();

  // Independent rows (Sigma = I), sampled directly as G * L_psi'.
  auto worst_error = [&](int p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix> samples;
    for (int k = 0; k < 4; ++k) {
      Matrix g(p, q);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) g(i, j) = rng.normal();
      samples.push_back(g * l_psi.transpose());
    }
    const Dataset d = Dataset::from_samples(std::move(samples));
    AxisAnalysis analysis(d, Axis::gamma, LassoConfig{});
    // Rows are independent here, so the exact correction is 1; tune delta on
    // the tail objective without touching the p x p covariance.
    double best_obj = 0.0, delta_hat = 0.0;
    for (double delta : TuningGrid::defaults().deltas) {
      const double obj = ats_objective(analysis.statistics_with_correction(1.0, delta));
      if (delta_hat == 0.0 || obj < best_obj) {
        best_obj = obj;
        delta_hat = delta;
      }
    }
    const CoefficientSet& cs = analysis.fits(delta_hat);
    double worst = 0.0;
    for (int j = 0; j < q; ++j) {
      Vector truth = Vector::Zero(q);
      for (int c = 0; c < q; ++c) {
        if (c != j) truth[c] = -gamma(c, j) / gamma(j, j);
      }
      worst = std::max(worst, (cs.fits[j].by_column - truth).norm());
    }
    return worst;
  };

  // Averaged over a few replications so the 4x comparison is not dominated by
  // single-draw noise.
  double err_small = 0.0, err_large = 0.0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    const double e1 = worst_error(2500, 101 + s);    // np = 10000
    const double e4 = worst_error(10000, 201 + s);   // np = 40000
    CHECK(e1 < 0.2);
    err_small += e1;
    err_large += e4;
  }
  CHECK(err_large < err_small);
}

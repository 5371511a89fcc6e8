#include "mggm/teststat.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mggm/errors.hpp"

namespace mggm {

ResidualCov residual_cov(const RowGram& g, const CoefficientSet& coeffs) {
  const int q = g.q;
  if (coeffs.q != q || static_cast<int>(coeffs.fits.size()) != q) {
    throw DataError("residual_cov: coefficient set does not match the data dimensions");
  }
  const double np = static_cast<double>(g.n) * g.p;
  const double divisor = static_cast<double>(g.n - 1) * g.p;

  // b(m, i) = coefficient of covariate m in the fit for target i.
  Matrix b(q, q);
  for (int i = 0; i < q; ++i) {
    if (coeffs.fits[i].target != i || coeffs.fits[i].by_column.size() != q) {
      throw DataError("residual_cov: malformed coefficient set");
    }
    b.col(i) = coeffs.fits[i].by_column;
  }

  // Full-fit residual products through the Gram: with M = I - b, the residual
  // for target i is Z' m_i, so <e_i, e_j> = np * (M' S M)_ij and
  // <e_i, c_i> = np * (M' S)_ii. Zeroing one coefficient adds a rank-one term,
  // handled in closed form below.
  const Matrix m = Matrix::Identity(q, q) - b;
  const Matrix t = np * (m.transpose() * g.s);
  const Matrix e = t * m;
  const Vector u = t.diagonal();

  Matrix r(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = i; j < q; ++j) {
      const double bij = b(j, i);  // covariate j in fit i
      const double bji = b(i, j);  // covariate i in fit j
      const double v =
          (e(i, j) + bji * u[i] + bij * u[j] + bij * bji * np * g.s(i, j)) / divisor;
      r(i, j) = v;
      r(j, i) = v;
    }
  }
  return ResidualCov{std::move(r)};
}

ResidualCov residual_cov(const Dataset& d, const CoefficientSet& coeffs) {
  if (coeffs.q != d.q) {
    throw DataError("residual_cov: coefficient set does not match the data dimensions");
  }
  return residual_cov(build_row_gram(d), coeffs);
}

Matrix column_covariance(const Dataset& d) {
  Matrix acc = Matrix::Zero(d.p, d.p);
  const double divisor = static_cast<double>(d.n - 1) * d.q;
  for (const Matrix& x : d.samples) {
    const Matrix centered = x - d.mean_hat;
    acc.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / divisor);
  }
  acc.triangularView<Eigen::StrictlyUpper>() = acc.transpose();
  return acc;
}

Matrix threshold_covariance(const Matrix& sigma_hat, double lambda, int n, int cols) {
  if (lambda < 0.0) throw ConfigError("threshold_covariance: lambda must be nonnegative");
  const int p = static_cast<int>(sigma_hat.rows());
  const double count = static_cast<double>(n) * cols;
  const double cutoff =
      lambda * std::sqrt(std::log(std::max<double>(p, count)) / count);
  Matrix out = sigma_hat;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i != j && std::fabs(out(i, j)) < cutoff) out(i, j) = 0.0;
    }
  }
  return out;
}

VarianceCorrection make_variance_correction(const Dataset& d, double lambda) {
  VarianceCorrection vc;
  vc.sigma_hat = column_covariance(d);
  vc.lambda = lambda;
  vc.sigma_thresholded = threshold_covariance(vc.sigma_hat, lambda, d.n, d.q);
  vc.a_hat = variance_correction(vc.sigma_thresholded);
  return vc;
}

double variance_correction(const Matrix& sigma_lambda) {
  const double trace = sigma_lambda.trace();
  if (!(trace > 0.0)) {
    throw DegenerateDataError("variance_correction: nonpositive trace");
  }
  const double fro2 = sigma_lambda.squaredNorm();
  return static_cast<double>(sigma_lambda.rows()) * fro2 / (trace * trace);
}

TestMatrix test_statistics(const ResidualCov& rc, double a_hat, int n, int p, Axis axis) {
  if (!(a_hat > 0.0)) throw DegenerateDataError("test_statistics: correction must be positive");
  const int q = static_cast<int>(rc.r.rows());
  for (int i = 0; i < q; ++i) {
    if (rc.r(i, i) < 1e-12) {
      throw DegenerateDataError("test_statistics: residual variance of column " +
                                std::to_string(i) + " is numerically zero");
    }
  }
  const double scale = std::sqrt(static_cast<double>(n - 1) * p / a_hat);
  TestMatrix tm;
  tm.t = Matrix::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      const double v = scale * rc.r(i, j) / std::sqrt(rc.r(i, i) * rc.r(j, j));
      tm.t(i, j) = v;
      tm.t(j, i) = v;
    }
  }
  tm.a_hat = a_hat;
  tm.axis = axis;
  tm.n = n;
  tm.other_dim = p;
  return tm;
}

TestMatrix run_axis(const Dataset& d, Axis axis, const LassoConfig& cfg, double lambda) {
  AxisAnalysis analysis(d, axis, cfg);
  return analysis.statistics(lambda, cfg.delta);
}

AxisAnalysis::AxisAnalysis(const Dataset& d, Axis axis, const LassoConfig& base)
    : axis_(axis), base_(base), data_(axis == Axis::gamma ? d : d.transposed()) {
  gram_ = build_row_gram(data_);
}

const CoefficientSet& AxisAnalysis::fits(double delta) {
  auto it = fits_by_delta_.find(delta);
  if (it == fits_by_delta_.end()) {
    LassoConfig cfg = base_;
    cfg.delta = delta;
    it = fits_by_delta_.emplace(delta, fit_all(gram_, cfg)).first;
    max_kkt_ = std::max(max_kkt_, it->second.max_kkt_residual());
  }
  return it->second;
}

const Matrix& AxisAnalysis::residual_correlation(double delta) {
  auto it = corr_by_delta_.find(delta);
  if (it == corr_by_delta_.end()) {
    const ResidualCov rc = residual_cov(gram_, fits(delta));
    const int q = gram_.q;
    for (int i = 0; i < q; ++i) {
      if (rc.r(i, i) < 1e-12) {
        throw DegenerateDataError(
            "residual correlation: residual variance of column " + std::to_string(i) +
            " is numerically zero");
      }
    }
    Matrix corr(q, q);
    for (int i = 0; i < q; ++i) {
      corr(i, i) = 1.0;
      for (int j = i + 1; j < q; ++j) {
        const double v = rc.r(i, j) / std::sqrt(rc.r(i, i) * rc.r(j, j));
        corr(i, j) = v;
        corr(j, i) = v;
      }
    }
    it = corr_by_delta_.emplace(delta, std::move(corr)).first;
  }
  return it->second;
}

double AxisAnalysis::a_hat(double lambda) {
  auto it = a_hat_by_lambda_.find(lambda);
  if (it == a_hat_by_lambda_.end()) {
    if (!sigma_hat_) sigma_hat_ = column_covariance(data_);
    const Matrix thresholded =
        threshold_covariance(*sigma_hat_, lambda, gram_.n, gram_.q);
    it = a_hat_by_lambda_.emplace(lambda, variance_correction(thresholded)).first;
  }
  return it->second;
}

TestMatrix AxisAnalysis::statistics(double lambda, double delta) {
  return statistics_with_correction(a_hat(lambda), delta);
}

TestMatrix AxisAnalysis::statistics_with_correction(double a_hat_value, double delta) {
  if (!(a_hat_value > 0.0)) {
    throw DegenerateDataError("statistics: correction must be positive");
  }
  const Matrix& corr = residual_correlation(delta);
  const double scale =
      std::sqrt(static_cast<double>(gram_.n - 1) * gram_.p / a_hat_value);
  TestMatrix tm;
  tm.t = scale * corr;
  tm.t.diagonal().setZero();
  tm.a_hat = a_hat_value;
  tm.axis = axis_;
  tm.n = gram_.n;
  tm.other_dim = gram_.p;
  return tm;
}

}  // namespace mggm

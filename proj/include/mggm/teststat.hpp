#pragma once

#include <map>
#include <optional>

#include "mggm/regression.hpp"

namespace mggm {

// Sample covariances of the per-pair regression residuals; r(i,j) pairs the
// residual of column i's fit with covariate j zeroed against the mirrored one,
// summed over all row samples with divisor (n-1)*p.
struct ResidualCov {
  Matrix r;  // q x q, symmetric
};

// Correction for the correlation among row samples: a_hat is the ratio
// p * ||S||_F^2 / tr(S)^2 of the thresholded column-sample covariance.
struct VarianceCorrection {
  Matrix sigma_hat;          // p x p, divisor (n-1)*q
  double lambda = 0.0;
  Matrix sigma_thresholded;  // off-diagonals kept iff above the cutoff
  double a_hat = 0.0;
};

struct TestMatrix {
  Matrix t;  // symmetric, zero diagonal; the diagonal is never tested
  double a_hat = 0.0;
  Axis axis = Axis::gamma;
  int n = 0;
  int other_dim = 0;  // p for the gamma axis, q for the omega axis

  int dim() const { return static_cast<int>(t.rows()); }
};

ResidualCov residual_cov(const Dataset& d, const CoefficientSet& coeffs);
// Gram-form accumulation; identical contract, O(q^3) instead of O(q^2 n p).
ResidualCov residual_cov(const RowGram& g, const CoefficientSet& coeffs);

// Covariance of the n*q centered column samples, divisor (n-1)*q.
Matrix column_covariance(const Dataset& d);

// Off-diagonals below lambda * sqrt(log(max(p, n*cols)) / (n*cols)) are zeroed;
// the diagonal is never touched.
Matrix threshold_covariance(const Matrix& sigma_hat, double lambda, int n, int cols);

// p * ||m||_F^2 / tr(m)^2; equals 1 exactly when m is a positive multiple of
// the identity and is scale invariant.
double variance_correction(const Matrix& sigma_lambda);

// Bundles the correction pipeline for one threshold choice.
VarianceCorrection make_variance_correction(const Dataset& d, double lambda);

// T(i,j) = sqrt((n-1)*p / a_hat) * r_ij / sqrt(r_ii r_jj), diagonal zero.
TestMatrix test_statistics(const ResidualCov& rc, double a_hat, int n, int p,
                           Axis axis = Axis::gamma);

// One axis of the full procedure: the gamma axis tests the q x q column graph
// on the data as given; the omega axis transposes every observation and swaps
// the roles of p and q.
TestMatrix run_axis(const Dataset& d, Axis axis, const LassoConfig& cfg, double lambda);

// Shared intermediates for one axis. The per-column fits depend only on the
// penalty multiplier delta and the correction only on the threshold multiplier
// lambda, so a (lambda, delta) grid scan reuses both across cells.
class AxisAnalysis {
 public:
  AxisAnalysis(const Dataset& d, Axis axis, const LassoConfig& base);

  Axis axis() const { return axis_; }
  int dim() const { return gram_.q; }           // tested dimension
  int other_dim() const { return gram_.p; }     // sample-row dimension
  int n() const { return gram_.n; }

  const CoefficientSet& fits(double delta);
  const Matrix& residual_correlation(double delta);  // r_ij / sqrt(r_ii r_jj)
  double a_hat(double lambda);
  TestMatrix statistics(double lambda, double delta);
  // Same statistics with an externally supplied correction (e.g. computed
  // from a known covariance); skips the thresholding path entirely.
  TestMatrix statistics_with_correction(double a_hat, double delta);

  // Worst KKT residual over every fit performed so far.
  double max_kkt_residual() const { return max_kkt_; }

 private:
  Axis axis_;
  LassoConfig base_;
  Dataset data_;  // transposed copy for the omega axis
  RowGram gram_;
  std::optional<Matrix> sigma_hat_;  // built on first a_hat() call
  std::map<double, CoefficientSet> fits_by_delta_;
  std::map<double, Matrix> corr_by_delta_;
  std::map<double, double> a_hat_by_lambda_;
  double max_kkt_ = 0.0;
};

}  // namespace mggm

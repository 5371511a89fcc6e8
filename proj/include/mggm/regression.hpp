#pragma once

#include <vector>

#include "mggm/model.hpp"
#include "mggm/types.hpp"

namespace mggm {

// The n*p centered "row samples": column k*p + l of z is row l of
// (sample k - mean), transposed. Rows of z therefore sum to zero.
struct RowView {
  Matrix z;  // q x (n*p)
  int n = 0, p = 0, q = 0;
};

struct RowCovariance {
  Matrix psi_hat;  // q x q, divisor (n-1)*p
  Vector diag;     // copy of psi_hat's diagonal; scalings D_j drop entry j
};

struct LassoConfig {
  double delta = 2.0;       // penalty multiplier
  int max_sweeps = 10000;
  double kkt_tol = 1e-6;    // certificate tolerance on the subgradient
  double coord_tol = 1e-7;  // max per-sweep change of the scaled coefficients
};

// One per-column fit. Coefficients are addressed by original column id:
// by_column has length q with the target's own slot structurally zero.
struct Coefficients {
  int target = -1;
  Vector by_column;
  double penalty = 0.0;       // theta_{n,target}(delta)
  double kkt_residual = 0.0;  // certified subgradient residual at the solution
  int sweeps = 0;
};

struct CoefficientSet {
  int q = 0;
  double delta = 0.0;
  std::vector<Coefficients> fits;  // index j = fit for target column j

  double max_kkt_residual() const;
};

// Gram-form view of the row samples. The Lasso objective and the residual
// covariances depend on the data only through these q x q products, so they
// are computed once per dataset and shared across all per-column fits.
struct RowGram {
  Matrix s;           // Z Z' / (n*p)   (objective divisor, as printed)
  RowCovariance cov;  // Z Z' / ((n-1)*p)
  int n = 0, p = 0, q = 0;
};

RowView extract_row_samples(const Dataset& d);

// Errors with the offending column when a diagonal entry vanishes.
RowCovariance row_covariance(const RowView& v);

RowGram build_row_gram(const RowView& v);

// Same products accumulated sample by sample, without materializing the
// q x (n*p) row-sample matrix. Agrees with the RowView path to round-off.
RowGram build_row_gram(const Dataset& d);

// Lasso for the regression of column `target` on the remaining columns over
// the n*p row samples, solved by cyclic coordinate descent with
// soft-thresholding on the D_j^{-1/2}-scaled problem. Returns coefficients on
// the original scale. Convergence is certified by the KKT residual; a sweep
// budget overrun throws ConvergenceError carrying the final residual.
Coefficients lasso_fit(const RowGram& g, int target, const LassoConfig& cfg);
Coefficients lasso_fit(const RowView& v, int target, const LassoConfig& cfg);

CoefficientSet fit_all(const RowGram& g, const LassoConfig& cfg);
CoefficientSet fit_all(const RowView& v, const LassoConfig& cfg);

// Copy of the fit with the entry for covariate `column` set to exact zero;
// the fit's own target column is already structurally zero, so
// zero_component(beta, beta.target) returns the fit unchanged.
Coefficients zero_component(const Coefficients& beta, int column);

// Smooth-part gradient of the scaled problem at the fitted point and the
// penalty; used by tests to validate the KKT certificate independently.
Vector scaled_gradient(const RowGram& g, const Coefficients& fit);

}  // namespace mggm

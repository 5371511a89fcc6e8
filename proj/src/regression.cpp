#include "mggm/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mggm/errors.hpp"

namespace mggm {

double CoefficientSet::max_kkt_residual() const {
  double worst = 0.0;
  for (const Coefficients& f : fits) worst = std::max(worst, f.kkt_residual);
  return worst;
}

RowView extract_row_samples(const Dataset& d) {
  RowView v;
  v.n = d.n;
  v.p = d.p;
  v.q = d.q;
  v.z.resize(d.q, static_cast<Eigen::Index>(d.n) * d.p);
  for (int k = 0; k < d.n; ++k) {
    for (int l = 0; l < d.p; ++l) {
      v.z.col(static_cast<Eigen::Index>(k) * d.p + l) =
          (d.samples[k].row(l) - d.mean_hat.row(l)).transpose();
    }
  }
  return v;
}

RowCovariance row_covariance(const RowView& v) {
  RowCovariance rc;
  const double divisor = static_cast<double>(v.n - 1) * v.p;
  Matrix psi = Matrix::Zero(v.q, v.q);
  psi.selfadjointView<Eigen::Lower>().rankUpdate(v.z, 1.0 / divisor);
  psi.triangularView<Eigen::StrictlyUpper>() = psi.transpose();
  for (int j = 0; j < v.q; ++j) {
    if (!(psi(j, j) > 0.0)) {
      throw DegenerateDataError("row_covariance: column " + std::to_string(j) +
                                " is constant across the samples");
    }
  }
  rc.diag = psi.diagonal();
  rc.psi_hat = std::move(psi);
  return rc;
}

RowGram build_row_gram(const RowView& v) {
  RowGram g;
  g.n = v.n;
  g.p = v.p;
  g.q = v.q;
  g.cov = row_covariance(v);
  // Same sum of products, objective divisor n*p instead of (n-1)*p.
  g.s = g.cov.psi_hat * (static_cast<double>(v.n - 1) / v.n);
  return g;
}

RowGram build_row_gram(const Dataset& d) {
  Matrix psi = Matrix::Zero(d.q, d.q);
  const double divisor = static_cast<double>(d.n - 1) * d.p;
  for (const Matrix& x : d.samples) {
    const Matrix centered = x - d.mean_hat;
    psi.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / divisor);
  }
  psi.triangularView<Eigen::StrictlyUpper>() = psi.transpose();
  for (int j = 0; j < d.q; ++j) {
    if (!(psi(j, j) > 0.0)) {
      throw DegenerateDataError("row_covariance: column " + std::to_string(j) +
                                " is constant across the samples");
    }
  }
  RowGram g;
  g.n = d.n;
  g.p = d.p;
  g.q = d.q;
  g.cov.diag = psi.diagonal();
  g.cov.psi_hat = std::move(psi);
  g.s = g.cov.psi_hat * (static_cast<double>(d.n - 1) / d.n);
  return g;
}

namespace {

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

// Subgradient residual of the penalized problem at alpha, given the negative
// smooth gradient rho = h - H alpha.
double kkt_residual_from(const Vector& rho, const Vector& alpha, double theta) {
  double worst = 0.0;
  for (Eigen::Index m = 0; m < alpha.size(); ++m) {
    double viol;
    if (alpha[m] == 0.0) {
      viol = std::max(0.0, std::fabs(rho[m]) - theta);
    } else {
      viol = std::fabs(theta * (alpha[m] > 0 ? 1.0 : -1.0) - rho[m]);
    }
    worst = std::max(worst, viol);
  }
  return worst;
}

}  // namespace

Coefficients lasso_fit(const RowGram& g, int target, const LassoConfig& cfg) {
  if (target < 0 || target >= g.q) throw ConfigError("lasso_fit: target out of range");
  if (cfg.max_sweeps < 1 || !(cfg.kkt_tol > 0.0) || !(cfg.coord_tol > 0.0) ||
      cfg.delta < 0.0) {
    throw ConfigError("lasso_fit: invalid configuration");
  }

  const int q = g.q;
  const int m = q - 1;
  const double np = static_cast<double>(g.n) * g.p;
  const double theta =
      cfg.delta * std::sqrt(g.cov.psi_hat(target, target) *
                            std::log(static_cast<double>(std::max<long long>(
                                q, static_cast<long long>(g.n) * g.p))) /
                            np);

  // Covariate m <-> original column cols[m]; the scaled Gram has diagonal
  // (n-1)/n by construction of D_j.
  std::vector<int> cols(m);
  Vector dinv_sqrt(m);
  for (int c = 0, a = 0; c < q; ++c) {
    if (c == target) continue;
    cols[a] = c;
    dinv_sqrt[a] = 1.0 / std::sqrt(g.cov.diag[c]);
    ++a;
  }

  Matrix h_mat(m, m);
  Vector h_vec(m);
  for (int a = 0; a < m; ++a) {
    h_vec[a] = g.s(cols[a], target) * dinv_sqrt[a];
    for (int b = 0; b <= a; ++b) {
      const double v = g.s(cols[a], cols[b]) * dinv_sqrt[a] * dinv_sqrt[b];
      h_mat(a, b) = v;
      h_mat(b, a) = v;
    }
  }

  Vector alpha = Vector::Zero(m);
  Vector rho = h_vec;  // h - H alpha, starting from alpha = 0
  double kkt = kkt_residual_from(rho, alpha, theta);
  int sweeps = 0;
  bool converged = m == 0 || kkt < cfg.kkt_tol;

  while (!converged && sweeps < cfg.max_sweeps) {
    ++sweeps;
    double max_change = 0.0;
    for (int a = 0; a < m; ++a) {
      const double haa = h_mat(a, a);
      const double z = rho[a] + haa * alpha[a];
      const double updated = soft_threshold(z, theta) / haa;
      const double change = updated - alpha[a];
      if (change != 0.0) {
        rho.noalias() -= h_mat.col(a) * change;
        alpha[a] = updated;
        max_change = std::max(max_change, std::fabs(change));
      }
    }
    if (max_change < cfg.coord_tol) {
      // Refresh the gradient from scratch before certifying; the incremental
      // rho accumulates round-off over many sweeps.
      rho = h_vec - h_mat * alpha;
      kkt = kkt_residual_from(rho, alpha, theta);
      if (kkt < cfg.kkt_tol) {
        converged = true;
      }
    }
  }
  if (!converged) {
    rho = h_vec - h_mat * alpha;
    kkt = kkt_residual_from(rho, alpha, theta);
    if (kkt >= cfg.kkt_tol) {
      throw ConvergenceError("lasso_fit: no KKT certificate after " +
                                 std::to_string(cfg.max_sweeps) +
                                 " sweeps (residual " + std::to_string(kkt) + ")",
                             kkt);
    }
  }

  Coefficients out;
  out.target = target;
  out.by_column = Vector::Zero(q);
  for (int a = 0; a < m; ++a) out.by_column[cols[a]] = dinv_sqrt[a] * alpha[a];
  if (!out.by_column.allFinite()) {
    throw DegenerateDataError("lasso_fit: non-finite coefficients");
  }
  out.penalty = theta;
  out.kkt_residual = kkt;
  out.sweeps = sweeps;
  return out;
}

Coefficients lasso_fit(const RowView& v, int target, const LassoConfig& cfg) {
  return lasso_fit(build_row_gram(v), target, cfg);
}

CoefficientSet fit_all(const RowGram& g, const LassoConfig& cfg) {
  CoefficientSet cs;
  cs.q = g.q;
  cs.delta = cfg.delta;
  cs.fits.reserve(g.q);
  for (int j = 0; j < g.q; ++j) cs.fits.push_back(lasso_fit(g, j, cfg));
  return cs;
}

CoefficientSet fit_all(const RowView& v, const LassoConfig& cfg) {
  return fit_all(build_row_gram(v), cfg);
}

Coefficients zero_component(const Coefficients& beta, int column) {
  if (column < 0 || column >= beta.by_column.size()) {
    throw ConfigError("zero_component: column out of range");
  }
  if (column == beta.target) return beta;
  Coefficients out = beta;
  out.by_column[column] = 0.0;
  return out;
}

Vector scaled_gradient(const RowGram& g, const Coefficients& fit) {
  const int q = g.q;
  const int m = q - 1;
  Vector grad(m);
  for (int a = 0, c = 0; c < q; ++c) {
    if (c == fit.target) continue;
    // Gradient coordinate of the scaled problem: H alpha - h, rebuilt from the
    // stored original-scale coefficients (alpha = D^{1/2} beta).
    double acc = 0.0;
    for (int c2 = 0; c2 < q; ++c2) {
      if (c2 == fit.target) continue;
      acc += g.s(c, c2) * fit.by_column[c2];
    }
    grad[a] = (acc - g.s(c, fit.target)) / std::sqrt(g.cov.diag[c]);
    ++a;
  }
  return grad;
}

}  // namespace mggm

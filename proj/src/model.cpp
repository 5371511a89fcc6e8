#include "mggm/model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

#include "mggm/errors.hpp"
#include "mggm/rng.hpp"

namespace mggm {

const char* graph_family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::hub: return "hub";
    case GraphFamily::band: return "band";
    case GraphFamily::random_er: return "random";
  }
  return "?";
}

GraphFamily graph_family_from_name(const std::string& name) {
  if (name == "hub") return GraphFamily::hub;
  if (name == "band") return GraphFamily::band;
  if (name == "random") return GraphFamily::random_er;
  throw ConfigError("unknown graph kind '" + name + "' (expected hub, band or random)");
}

long long PrecisionMatrix::offdiag_support_count() const {
  const int d = dim();
  long long count = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && true_support(i, j)) ++count;
  return count;
}

namespace {

BoolMatrix support_of(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  BoolMatrix s(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i, j) = (i == j) || m(i, j) != 0.0;
  return s;
}

// Shift used by the hub and random constructions: lifts the smallest
// eigenvalue to exactly 0.05 when it is nonpositive, otherwise adds 0.05.
void shift_to_pd(Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  const double shift = std::max(0.0, -lambda_min) + 0.05;
  m.diagonal().array() += shift;
}

void check_pd(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DegenerateDataError(std::string(what) + ": matrix is not positive definite");
  }
}

}  // namespace

PrecisionMatrix gen_precision(const GraphKind& kind, int dim, std::uint64_t seed) {
  if (dim < 3) throw ConfigError("gen_precision: dim must be at least 3");
  if (!(kind.factor > 0.0)) throw ConfigError("gen_precision: factor must be positive");

  Matrix m = Matrix::Identity(dim, dim);
  switch (kind.family) {
    case GraphFamily::hub: {
      const double w = 0.5 / kind.factor;
      for (int start = 0; start + 10 <= dim; start += 10) {
        for (int j = start + 1; j < start + 10; ++j) {
          m(start, j) = w;
          m(j, start) = w;
        }
      }
      break;
    }
    case GraphFamily::band: {
      const double w1 = 0.6 / kind.factor;
      const double w2 = 0.3 / kind.factor;
      for (int i = 0; i < dim; ++i) {
        if (i + 1 < dim) m(i, i + 1) = m(i + 1, i) = w1;
        if (i + 2 < dim) m(i, i + 2) = m(i + 2, i) = w2;
      }
      break;
    }
    case GraphFamily::random_er: {
      Rng rng(seed);
      const double prob = std::min(kind.edge_prob_cap, 5.0 / dim);
      const double lo = 0.4 / kind.factor;
      const double hi = 0.8 / kind.factor;
      for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
          if (rng.bernoulli(prob)) {
            const double u = rng.uniform(lo, hi);
            m(i, j) = u;
            m(j, i) = u;
          }
        }
      }
      break;
    }
  }

  PrecisionMatrix out;
  out.true_support = support_of(m);
  if (kind.family != GraphFamily::band) shift_to_pd(m);
  check_pd(m, graph_family_name(kind.family));
  out.entries = std::move(m);
  return out;
}

Matrix invert_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw DegenerateDataError("invert_spd: Cholesky factorization failed (input not SPD)");
  }
  Matrix inv = llt.solve(Matrix::Identity(m.rows(), m.cols()));
  inv = 0.5 * (inv + inv.transpose()).eval();  // remove round-off asymmetry
  return inv;
}

Matrix invert_spd(const PrecisionMatrix& m) { return invert_spd(m.entries); }

ModelSpec make_model_spec(PrecisionMatrix omega, PrecisionMatrix gamma, Matrix mu, double nu) {
  if (nu < 0.0) throw ConfigError("make_model_spec: nu must be nonnegative");
  ModelSpec spec;
  spec.sigma = invert_spd(omega);
  spec.psi = invert_spd(gamma);
  const int p = omega.dim();
  const int q = gamma.dim();
  const double res_sigma =
      (spec.sigma * omega.entries - Matrix::Identity(p, p)).cwiseAbs().maxCoeff();
  const double res_psi =
      (spec.psi * gamma.entries - Matrix::Identity(q, q)).cwiseAbs().maxCoeff();
  if (res_sigma > 1e-8 || res_psi > 1e-8) {
    throw DegenerateDataError("make_model_spec: inversion residual exceeds 1e-8");
  }
  if (mu.size() == 0) {
    mu = Matrix::Zero(p, q);
  } else if (mu.rows() != p || mu.cols() != q) {
    throw ConfigError("make_model_spec: mu has wrong dimensions");
  }
  spec.omega = std::move(omega);
  spec.gamma = std::move(gamma);
  spec.mu = std::move(mu);
  spec.nu = nu;
  return spec;
}

Dataset sample_dataset(const ModelSpec& spec, int n, std::uint64_t seed) {
  if (n < 2) throw ConfigError("sample_dataset: n must be at least 2");
  const int p = static_cast<int>(spec.sigma.rows());
  const int q = static_cast<int>(spec.psi.rows());

  Eigen::LLT<Matrix> llt_sigma(spec.sigma);
  Eigen::LLT<Matrix> llt_psi(spec.psi);
  if (llt_sigma.info() != Eigen::Success || llt_psi.info() != Eigen::Success) {
    throw DegenerateDataError("sample_dataset: covariance is not positive definite");
  }
  const Matrix l_sigma = llt_sigma.matrixL();
  const Matrix l_psi = llt_psi.matrixL();

  Rng rng(seed);
  const double noise_sd = spec.nu > 0.0 ? std::sqrt(spec.nu) : 0.0;

  std::vector<Matrix> samples;
  samples.reserve(n);
  Matrix g(p, q);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < q; ++j) g(i, j) = rng.normal();
    Matrix x = spec.mu + l_sigma * g * l_psi.transpose();
    if (noise_sd > 0.0) {
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) x(i, j) += noise_sd * rng.normal();
    }
    samples.push_back(std::move(x));
  }
  return Dataset::from_samples(std::move(samples));
}

Dataset Dataset::from_samples(std::vector<Matrix> samples) {
  if (samples.size() < 2) throw DataError("Dataset: at least 2 samples required");
  const int p = static_cast<int>(samples[0].rows());
  const int q = static_cast<int>(samples[0].cols());
  if (p == 0 || q == 0) throw DataError("Dataset: samples must be non-empty matrices");
  Matrix mean = Matrix::Zero(p, q);
  for (const Matrix& x : samples) {
    if (x.rows() != p || x.cols() != q) {
      throw DataError("Dataset: samples have inconsistent dimensions");
    }
    mean += x;
  }
  mean /= static_cast<double>(samples.size());
  Dataset d;
  d.n = static_cast<int>(samples.size());
  d.p = p;
  d.q = q;
  d.samples = std::move(samples);
  d.mean_hat = std::move(mean);
  return d;
}

Dataset Dataset::transposed() const {
  Dataset t;
  t.n = n;
  t.p = q;
  t.q = p;
  t.samples.reserve(samples.size());
  for (const Matrix& x : samples) t.samples.push_back(x.transpose());
  t.mean_hat = mean_hat.transpose();
  return t;
}

Matrix true_partial_corr(const PrecisionMatrix& g) {
  const int d = g.dim();
  Matrix rho(d, d);
  for (int i = 0; i < d; ++i) {
    if (!(g.entries(i, i) > 0.0)) {
      throw DegenerateDataError("true_partial_corr: nonpositive diagonal entry");
    }
  }
  for (int i = 0; i < d; ++i) {
    rho(i, i) = 1.0;
    for (int j = i + 1; j < d; ++j) {
      const double v = -g.entries(i, j) / std::sqrt(g.entries(i, i) * g.entries(j, j));
      rho(i, j) = v;
      rho(j, i) = v;
    }
  }
  return rho;
}

double joint_partial_corr(const PrecisionMatrix& omega, const PrecisionMatrix& gamma,
                          int i, int k, int j, int l) {
  const int p = omega.dim();
  const int q = gamma.dim();
  if (i < 0 || i >= p || k < 0 || k >= p || j < 0 || j >= q || l < 0 || l >= q) {
    throw ConfigError("joint_partial_corr: index out of range");
  }
  if (i == k && j == l) {
    throw ConfigError("joint_partial_corr: the two entries must differ");
  }
  const double rho_omega =
      omega.entries(i, k) / std::sqrt(omega.entries(i, i) * omega.entries(k, k));
  const double rho_gamma =
      gamma.entries(j, l) / std::sqrt(gamma.entries(j, j) * gamma.entries(l, l));
  return -rho_omega * rho_gamma;
}

}  // namespace mggm

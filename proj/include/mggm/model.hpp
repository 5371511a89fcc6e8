#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mggm/types.hpp"

namespace mggm {

enum class GraphFamily { hub, band, random_er };

const char* graph_family_name(GraphFamily f);
GraphFamily graph_family_from_name(const std::string& name);

struct GraphKind {
  GraphFamily family = GraphFamily::band;
  // Divisor applied to the off-diagonal magnitudes; larger means weaker edges.
  double factor = 1.0;
  // random_er only: edge probability is min(edge_prob_cap, 5/dim).
  double edge_prob_cap = 0.05;
};

// Symmetric positive-definite matrix together with its exact nonzero pattern.
// The generators place exact zeros, so true_support is not a thresholded view.
struct PrecisionMatrix {
  Matrix entries;
  BoolMatrix true_support;  // diagonal always true

  int dim() const { return static_cast<int>(entries.rows()); }
  // Ordered count of off-diagonal support entries (each edge counted twice).
  long long offdiag_support_count() const;
};

struct Dataset {
  int n = 0, p = 0, q = 0;
  std::vector<Matrix> samples;
  Matrix mean_hat;  // entrywise average of the samples

  // Validates n >= 2 and consistent dimensions, computes mean_hat.
  static Dataset from_samples(std::vector<Matrix> samples);
  Dataset transposed() const;
};

struct ModelSpec {
  PrecisionMatrix omega;  // p x p row precision
  PrecisionMatrix gamma;  // q x q column precision
  Matrix sigma;           // omega^{-1}
  Matrix psi;             // gamma^{-1}
  Matrix mu;              // p x q mean
  // Additive diagonal term nu*I on the sampling covariance of vec(X');
  // 0 keeps the exact Kronecker structure.
  double nu = 0.0;
};

// Builds a precision matrix from one of the three graph families.
//
//   hub:    blocks of 10 rows; the first row of each block carries 0.5/f on
//           its nine within-block partners. dim not divisible by 10 keeps
//           floor(dim/10) blocks and leaves trailing rows diagonal-only.
//   band:   unit diagonal, 0.6/f at lag 1, 0.3/f at lag 2.
//   random: each unordered pair gets an edge with probability
//           min(edge_prob_cap, 5/dim); edge weights U(0.4/f, 0.8/f), one draw
//           per pair, placed symmetrically.
//
// hub and random are shifted by (max(0, -lambda_min) + 0.05) * I to make them
// positive definite; band is returned as constructed and must already be PD.
PrecisionMatrix gen_precision(const GraphKind& kind, int dim, std::uint64_t seed);

// Inverse of an SPD matrix via Cholesky solves; throws DegenerateDataError if
// the factorization fails.
Matrix invert_spd(const Matrix& m);
Matrix invert_spd(const PrecisionMatrix& m);

// Assembles the sampling model, computing sigma/psi and validating that the
// inverses reproduce the identity to 1e-8 in max-norm. mu defaults to zero.
ModelSpec make_model_spec(PrecisionMatrix omega, PrecisionMatrix gamma,
                          Matrix mu = Matrix(), double nu = 0.0);

// Draws n observations X = mu + L_sigma G L_psi' with G standard normal
// (plus sqrt(nu) * H entrywise when nu > 0, which realizes the covariance
// Sigma (x) Psi + nu I without forming a pq x pq matrix). Deterministic for a
// fixed seed.
Dataset sample_dataset(const ModelSpec& spec, int n, std::uint64_t seed);

// Partial correlations implied by a precision matrix: off-diagonals
// -g_ij / sqrt(g_ii g_jj), unit diagonal.
Matrix true_partial_corr(const PrecisionMatrix& g);

// Partial correlation between entries (i,j) and (k,l) of the matrix variate,
// factored through the two precision matrices (all indices 0-based):
//   -(omega_ik / sqrt(omega_ii omega_kk)) * (gamma_jl / sqrt(gamma_jj gamma_ll)).
double joint_partial_corr(const PrecisionMatrix& omega, const PrecisionMatrix& gamma,
                          int i, int k, int j, int l);

}  // namespace mggm

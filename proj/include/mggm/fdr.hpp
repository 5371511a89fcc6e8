#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mggm/model.hpp"
#include "mggm/teststat.hpp"
#include "mggm/types.hpp"

namespace mggm {

struct PairPValue {
  int i = 0, j = 0;  // unordered pair, i < j
  double p = 1.0;
};

struct PValueSet {
  int dim = 0;
  std::vector<PairPValue> entries;  // one per pair i < j, (dim^2 - dim)/2 total
};

struct BhSelection {
  double alpha = 0.0;
  int k_hat = 0;
  double cutoff = 0.0;  // p_(k_hat); 0 when nothing is selected
  std::vector<std::pair<int, int>> rejected;  // pairs with p <= cutoff
};

struct SupportEstimate {
  int dim = 0;
  BoolMatrix mask;          // symmetric, diagonal all true
  long long discoveries = 0;  // ordered off-diagonal count, 2 * |rejected|
};

struct JointMetrics {
  long long a = 0, b = 0;  // ordered discoveries in the omega / gamma estimates
  double alpha = 0.0;
  double alpha_prime = 0.0;
  // Present only when ground truth was supplied.
  std::optional<long long> a0, b0;
  std::optional<double> fdp_omega, fdp_gamma, fdp_joint, power_joint;
};

struct KronSupport {
  long long total_offdiag = 0;  // ordered count, p*b + a*(q+b)
  bool materialized = false;
  // Unordered node pairs {(i,j),(k,l)} of the joint graph, row-major node ids
  // i*q + j; filled only in materialized mode.
  std::vector<std::pair<int, int>> edges;
};

struct AlphaChoice {
  double alpha = 0.0;
  double alpha_prime = 0.0;
  long long a = 0, b = 0;
  bool zero_discovery = false;
};

// p_ij = 2 - 2*Phi(|T_ij|) over the pairs i < j.
PValueSet p_values(const TestMatrix& t);

// Benjamini-Hochberg step-up: k_hat = max{0 <= k <= m : p_(k) <= alpha*k/m},
// rejecting every p-value <= p_(k_hat) (ties included); nothing is rejected
// when k_hat = 0.
BhSelection bh_select(const PValueSet& pv, double alpha);

SupportEstimate support_estimate(const BhSelection& sel, int dim);

// Estimated FDP of the joint Kronecker support at per-axis level alpha with a
// and b ordered discovery counts:
//   alpha * ((2 - alpha) a b + a q + b p) / max(a b + a q + p b, 1).
double alpha_prime(double alpha, long long a, long long b, int p, int q);

std::vector<double> default_alpha_grid();

// Scans an ascending grid of per-axis alphas; `realized` runs both axis
// selections and returns the ordered discovery counts (a, b) at a candidate.
// Returns the candidate whose alpha_prime lands closest to the target,
// preferring the smaller alpha on ties.
AlphaChoice choose_alpha_for_target(double target, int p, int q,
                                    const std::function<std::pair<long long, long long>(double)>& realized,
                                    const std::vector<double>& grid = default_alpha_grid());

// FDP / power bookkeeping for the joint estimate; the truth pair is
// (omega, gamma). Without truth only a, b and alpha_prime are filled.
JointMetrics joint_metrics(const SupportEstimate& omega_est, const SupportEstimate& gamma_est,
                           const std::optional<std::pair<const PrecisionMatrix*, const PrecisionMatrix*>>& truth,
                           double alpha);

// Joint support of the two estimates. Edges are materialized only when the
// closed-form ordered discovery count stays within `cap`; above it (or when
// materialize is forced on a too-large instance, which throws) only the count
// is returned.
KronSupport kron_support(const SupportEstimate& omega_est, const SupportEstimate& gamma_est,
                         long long cap = 4'000'000, bool force_materialize = false);

}  // namespace mggm

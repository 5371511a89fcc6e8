#include "mggm/fdr.hpp"

#include <algorithm>
#include <cmath>

#include "mggm/errors.hpp"
#include "mggm/stats.hpp"

namespace mggm {

PValueSet p_values(const TestMatrix& t) {
  const int q = t.dim();
  PValueSet pv;
  pv.dim = q;
  pv.entries.reserve(static_cast<std::size_t>(q) * (q - 1) / 2);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      const double stat = t.t(i, j);
      if (!std::isfinite(stat)) {
        throw DegenerateDataError("p_values: non-finite test statistic");
      }
      pv.entries.push_back({i, j, two_sided_p(stat)});
    }
  }
  return pv;
}

BhSelection bh_select(const PValueSet& pv, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("bh_select: alpha must lie in (0, 1)");
  }
  const std::size_t m = pv.entries.size();
  std::vector<double> sorted;
  sorted.reserve(m);
  for (const PairPValue& e : pv.entries) sorted.push_back(e.p);
  std::sort(sorted.begin(), sorted.end());

  int k_hat = 0;
  for (std::size_t k = m; k >= 1; --k) {
    if (sorted[k - 1] <= alpha * static_cast<double>(k) / static_cast<double>(m)) {
      k_hat = static_cast<int>(k);
      break;
    }
  }

  BhSelection sel;
  sel.alpha = alpha;
  sel.k_hat = k_hat;
  sel.cutoff = k_hat > 0 ? sorted[k_hat - 1] : 0.0;
  if (k_hat > 0) {
    for (const PairPValue& e : pv.entries) {
      if (e.p <= sel.cutoff) sel.rejected.emplace_back(e.i, e.j);
    }
  }
  return sel;
}

SupportEstimate support_estimate(const BhSelection& sel, int dim) {
  SupportEstimate est;
  est.dim = dim;
  est.mask = BoolMatrix::Constant(dim, dim, false);
  for (int i = 0; i < dim; ++i) est.mask(i, i) = true;
  for (const auto& [i, j] : sel.rejected) {
    if (i < 0 || j < 0 || i >= dim || j >= dim) {
      throw ConfigError("support_estimate: rejected pair out of range");
    }
    est.mask(i, j) = true;
    est.mask(j, i) = true;
  }
  est.discoveries = 2 * static_cast<long long>(sel.rejected.size());
  return est;
}

double alpha_prime(double alpha, long long a, long long b, int p, int q) {
  if (a < 0 || b < 0) throw ConfigError("alpha_prime: counts must be nonnegative");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha_prime: alpha must lie in (0, 1)");
  }
  const double ab = static_cast<double>(a) * static_cast<double>(b);
  const double numer = alpha * ((2.0 - alpha) * ab + static_cast<double>(a) * q +
                                static_cast<double>(b) * p);
  const double denom = std::max(ab + static_cast<double>(a) * q + static_cast<double>(p) * b, 1.0);
  return numer / denom;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(i / 100.0);
  return grid;
}

AlphaChoice choose_alpha_for_target(
    double target, int p, int q,
    const std::function<std::pair<long long, long long>(double)>& realized,
    const std::vector<double>& grid) {
  if (!(target > 0.0 && target < 1.0)) {
    throw ConfigError("choose_alpha_for_target: target must lie in (0, 1)");
  }
  if (grid.empty()) throw ConfigError("choose_alpha_for_target: empty alpha grid");

  AlphaChoice best;
  double best_gap = -1.0;
  for (double alpha : grid) {
    const auto [a, b] = realized(alpha);
    const double ap = alpha_prime(alpha, a, b, p, q);
    const double gap = std::fabs(ap - target);
    if (best_gap < 0.0 || gap < best_gap) {
      best_gap = gap;
      best = AlphaChoice{alpha, ap, a, b, a == 0 && b == 0};
    }
  }
  return best;
}

namespace {

// Ordered off-diagonal counts of estimate vs truth for one axis.
struct AxisCounts {
  long long discoveries = 0;
  long long false_discoveries = 0;
};

AxisCounts count_against_truth(const SupportEstimate& est, const PrecisionMatrix& truth) {
  if (truth.dim() != est.dim) {
    throw DataError("joint_metrics: truth dimension does not match the estimate");
  }
  AxisCounts c;
  for (int i = 0; i < est.dim; ++i) {
    for (int j = 0; j < est.dim; ++j) {
      if (i == j || !est.mask(i, j)) continue;
      ++c.discoveries;
      if (!truth.true_support(i, j)) ++c.false_discoveries;
    }
  }
  return c;
}

}  // namespace

JointMetrics joint_metrics(
    const SupportEstimate& omega_est, const SupportEstimate& gamma_est,
    const std::optional<std::pair<const PrecisionMatrix*, const PrecisionMatrix*>>& truth,
    double alpha) {
  const int p = omega_est.dim;
  const int q = gamma_est.dim;
  JointMetrics jm;
  jm.a = omega_est.discoveries;
  jm.b = gamma_est.discoveries;
  jm.alpha = alpha;
  jm.alpha_prime = alpha_prime(alpha, jm.a, jm.b, p, q);

  if (!truth) return jm;
  const auto [omega_truth, gamma_truth] = *truth;

  const AxisCounts oc = count_against_truth(omega_est, *omega_truth);
  const AxisCounts gc = count_against_truth(gamma_est, *gamma_truth);
  const double a = static_cast<double>(oc.discoveries);
  const double a0 = static_cast<double>(oc.false_discoveries);
  const double b = static_cast<double>(gc.discoveries);
  const double b0 = static_cast<double>(gc.false_discoveries);
  jm.a0 = oc.false_discoveries;
  jm.b0 = gc.false_discoveries;
  jm.fdp_omega = a0 / std::max(a, 1.0);
  jm.fdp_gamma = b0 / std::max(b, 1.0);
  jm.fdp_joint = (a0 * (q + b) + (a - a0) * b0 + p * b0) /
                 std::max(p * b + a * (q + b), 1.0);

  const double big_a = static_cast<double>(omega_truth->offdiag_support_count());
  const double big_b = static_cast<double>(gamma_truth->offdiag_support_count());
  const double denom = p * big_b + big_a * (q + big_b);
  if (denom > 0.0) {
    jm.power_joint = (p * (b - b0) + (a - a0) * (q + b - b0)) / denom;
  } else {
    jm.power_joint = 1.0;  // no true edges to find
  }
  return jm;
}

KronSupport kron_support(const SupportEstimate& omega_est, const SupportEstimate& gamma_est,
                         long long cap, bool force_materialize) {
  const int p = omega_est.dim;
  const int q = gamma_est.dim;
  const long long a = omega_est.discoveries;
  const long long b = gamma_est.discoveries;

  KronSupport ks;
  ks.total_offdiag = static_cast<long long>(p) * b + a * (q + b);
  if (ks.total_offdiag > cap) {
    if (force_materialize) {
      throw ConfigError("kron_support: materialization cap exceeded");
    }
    return ks;
  }

  // Joint edge between nodes (i,j) and (k,l) iff omega(i,k) and gamma(j,l)
  // are both selected; enumerate each unordered pair once.
  ks.materialized = true;
  ks.edges.reserve(static_cast<std::size_t>(ks.total_offdiag / 2));
  for (int i = 0; i < p; ++i) {
    for (int k = i; k < p; ++k) {
      if (!omega_est.mask(i, k)) continue;
      for (int j = 0; j < q; ++j) {
        const int l_start = (i == k) ? j + 1 : 0;
        for (int l = l_start; l < q; ++l) {
          if (!gamma_est.mask(j, l)) continue;
          if (i == k && j == l) continue;
          ks.edges.emplace_back(i * q + j, k * q + l);
        }
      }
    }
  }
  return ks;
}

}  // namespace mggm

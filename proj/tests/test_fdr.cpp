#include <doctest.h>

#include <cmath>

#include "mggm/errors.hpp"
#include "mggm/fdr.hpp"
#include "mggm/rng.hpp"
#include "oracles.hpp"

using namespace mggm;

namespace {

TestMatrix matrix_from(const Matrix& t) {
  TestMatrix tm;
  tm.t = t;
  tm.a_hat = 1.0;
  tm.n = 10;
  tm.other_dim = 10;
  return tm;
}

PValueSet pvalues_from(const std::vector<double>& p, int dim) {
  PValueSet pv;
  pv.dim = dim;
  std::size_t idx = 0;
  for (int i = 0; i < dim && idx < p.size(); ++i) {
    for (int j = i + 1; j < dim && idx < p.size(); ++j) {
      pv.entries.push_back({i, j, p[idx++]});
    }
  }
  return pv;
}

BoolMatrix random_mask(int dim, double density, Rng& rng) {
  BoolMatrix m = BoolMatrix::Constant(dim, dim, false);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = true;
    for (int j = i + 1; j < dim; ++j) {
      const bool on = rng.uniform() < density;
      m(i, j) = on;
      m(j, i) = on;
    }
  }
  return m;
}

SupportEstimate estimate_from_mask(const BoolMatrix& mask) {
  SupportEstimate est;
  est.dim = static_cast<int>(mask.rows());
  est.mask = mask;
  est.discoveries = 0;
  for (int i = 0; i < est.dim; ++i)
    for (int j = 0; j < est.dim; ++j)
      if (i != j && mask(i, j)) ++est.discoveries;
  return est;
}

PrecisionMatrix truth_from_mask(const BoolMatrix& mask) {
  PrecisionMatrix g;
  const int dim = static_cast<int>(mask.rows());
  g.true_support = mask;
  g.entries = Matrix::Identity(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i != j && mask(i, j)) g.entries(i, j) = 0.1;
  return g;
}

}  // namespace

TEST_CASE("p-values from the test matrix") {
  Matrix t = Matrix::Zero(3, 3);
  t(0, 1) = t(1, 0) = 1.959964;
  t(0, 2) = t(2, 0) = 8.0;
  const PValueSet pv = p_values(matrix_from(t));
  REQUIRE(pv.entries.size() == 3);
  CHECK(pv.entries[0].p == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(pv.entries[1].p > 0.0);
  CHECK(pv.entries[1].p < 1e-14);
  CHECK(pv.entries[2].p == 1.0);

  // Monotone: larger |t| gives smaller p.
  double prev = 1.0;
  for (double stat = 0.0; stat < 6.0; stat += 0.1) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = stat;
    const double p = p_values(matrix_from(m)).entries[0].p;
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("BH worked example and edge cases") {
  const PValueSet pv = pvalues_from({0.01, 0.15, 0.9}, 3);
  const BhSelection sel = bh_select(pv, 0.3);
  CHECK(sel.k_hat == 2);
  CHECK(sel.cutoff == 0.15);
  CHECK(sel.rejected.size() == 2);

  const BhSelection none = bh_select(pvalues_from({1.0, 1.0, 1.0}, 3), 0.3);
  CHECK(none.k_hat == 0);
  CHECK(none.cutoff == 0.0);
  CHECK(none.rejected.empty());

  CHECK_THROWS_AS(bh_select(pv, 0.0), ConfigError);
  CHECK_THROWS_AS(bh_select(pv, 1.0), ConfigError);
}

TEST_CASE("BH agrees with brute-force enumeration") {
  Rng rng(12345);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform() * 20);
    std::vector<double> p(m);
    for (double& v : p) {
      v = rng.uniform();
      if (rng.uniform() < 0.2) v = std::round(v * 4) / 4.0;  // force ties
    }
    const double alpha = 0.01 + 0.98 * rng.uniform();
    int dim = 3;
    while (dim * (dim - 1) / 2 < m) ++dim;
    const PValueSet pv = pvalues_from(p, dim);
    const BhSelection got = bh_select(pv, alpha);
    const oracle::BhRef expect = oracle::bh_ref(p, alpha);
    CHECK(got.k_hat == expect.k_hat);
    CHECK(got.cutoff == expect.cutoff);
    CHECK(got.rejected.size() == expect.rejected.size());
  }
}

TEST_CASE("BH rejections grow with alpha") {
  Rng rng(777);
  std::vector<double> p(45);
  for (double& v : p) v = std::pow(rng.uniform(), 2.0);
  const PValueSet pv = pvalues_from(p, 10);
  std::size_t prev = 0;
  for (double alpha = 0.02; alpha < 1.0; alpha += 0.02) {
    const std::size_t count = bh_select(pv, alpha).rejected.size();
    CHECK(count >= prev);
    prev = count;
  }
}

TEST_CASE("support estimates") {
  BhSelection none;
  none.alpha = 0.1;
  const SupportEstimate empty = support_estimate(none, 3);
  CHECK(empty.discoveries == 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(empty.mask(i, j) == (i == j));

  BhSelection one;
  one.alpha = 0.1;
  one.k_hat = 1;
  one.cutoff = 0.001;
  one.rejected = {{0, 1}};
  const SupportEstimate est = support_estimate(one, 3);
  CHECK(est.discoveries == 2);
  CHECK(est.mask(0, 1));
  CHECK(est.mask(1, 0));
  CHECK_FALSE(est.mask(0, 2));
  CHECK(est.discoveries % 2 == 0);
}

TEST_CASE("alpha_prime formula") {
  CHECK(alpha_prime(0.1, 0, 0, 5, 5) == 0.0);
  // 0.1 * (1.9*200 + 10*40 + 20*50) / (200 + 400 + 1000) = 178/1600.
  CHECK(alpha_prime(0.1, 10, 20, 50, 40) == doctest::Approx(0.111250).epsilon(1e-12));

  // Monotone in alpha.
  double prev = 0.0;
  for (double alpha = 0.01; alpha <= 0.5; alpha += 0.01) {
    const double v = alpha_prime(alpha, 14, 6, 30, 40);
    CHECK(v >= prev);
    CHECK(v <= 1.0);
    prev = v;
  }

  // Substituting a0 = alpha*a, b0 = alpha*b into the joint FDP formula
  // reproduces alpha_prime identically.
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const long long a = static_cast<long long>(rng.uniform() * 40);
    const long long b = static_cast<long long>(rng.uniform() * 40);
    const int p = 3 + static_cast<int>(rng.uniform() * 40);
    const int q = 3 + static_cast<int>(rng.uniform() * 40);
    const double alpha = 0.01 + 0.6 * rng.uniform();
    const double a0 = alpha * a;
    const double b0 = alpha * b;
    const double fdp = (a0 * (q + b) + (a - a0) * b0 + p * b0) /
                       std::max<double>(static_cast<double>(p) * b + a * (q + b), 1.0);
    CHECK(alpha_prime(alpha, a, b, p, q) == doctest::Approx(fdp).epsilon(1e-12));
  }
}

TEST_CASE("joint metrics against materialized Kronecker counting") {
  Rng rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = 3 + static_cast<int>(rng.uniform() * 5);
    const int q = 3 + static_cast<int>(rng.uniform() * 5);
    const BoolMatrix omask = random_mask(p, 0.4, rng);
    const BoolMatrix gmask = random_mask(q, 0.4, rng);
    const BoolMatrix otruth = random_mask(p, 0.3, rng);
    const BoolMatrix gtruth = random_mask(q, 0.3, rng);

    const SupportEstimate oest = estimate_from_mask(omask);
    const SupportEstimate gest = estimate_from_mask(gmask);
    const PrecisionMatrix otm = truth_from_mask(otruth);
    const PrecisionMatrix gtm = truth_from_mask(gtruth);
    const JointMetrics jm =
        joint_metrics(oest, gest, std::make_pair(&otm, &gtm), 0.1);

    const oracle::KronCountsRef ref =
        oracle::kron_counts_ref(omask, gmask, otruth, gtruth);
    const double fdp_ref =
        static_cast<double>(ref.false_disc) / std::max<long long>(ref.total, 1);
    CHECK(jm.fdp_joint.value() == fdp_ref);
    if (ref.true_total > 0) {
      const double power_ref = static_cast<double>(ref.true_found) / ref.true_total;
      CHECK(jm.power_joint.value() == power_ref);
    }
    const KronSupport ks = kron_support(oest, gest);
    CHECK(ks.total_offdiag == ref.total);
    CHECK(ks.materialized);
    CHECK(2 * static_cast<long long>(ks.edges.size()) == ref.total);
  }
}

TEST_CASE("joint metrics endpoints") {
  Rng rng(666);
  const BoolMatrix otruth = random_mask(5, 0.4, rng);
  const BoolMatrix gtruth = random_mask(6, 0.4, rng);
  const PrecisionMatrix otm = truth_from_mask(otruth);
  const PrecisionMatrix gtm = truth_from_mask(gtruth);

  // Estimates equal to the truth: FDP 0, power 1.
  const JointMetrics perfect = joint_metrics(estimate_from_mask(otruth), estimate_from_mask(gtruth),
                                             std::make_pair(&otm, &gtm), 0.1);
  CHECK(perfect.fdp_joint.value() == 0.0);
  CHECK(perfect.power_joint.value() == 1.0);

  // Diagonal-only estimates: FDP 0 by the max guard, power 0.
  const JointMetrics nothing =
      joint_metrics(estimate_from_mask(BoolMatrix::Identity(5, 5)),
                    estimate_from_mask(BoolMatrix::Identity(6, 6)),
                    std::make_pair(&otm, &gtm), 0.1);
  CHECK(nothing.fdp_joint.value() == 0.0);
  CHECK(nothing.power_joint.value() == 0.0);
  CHECK(nothing.alpha_prime == 0.0);

  // Without truth only counts and alpha_prime are available.
  const JointMetrics blind =
      joint_metrics(estimate_from_mask(otruth), estimate_from_mask(gtruth), std::nullopt, 0.1);
  CHECK_FALSE(blind.fdp_joint.has_value());
  CHECK(blind.a == estimate_from_mask(otruth).discoveries);
}

TEST_CASE("kron support examples") {
  // Diagonal x diagonal: no off-diagonal edges.
  const KronSupport none = kron_support(estimate_from_mask(BoolMatrix::Identity(3, 3)),
                                        estimate_from_mask(BoolMatrix::Identity(4, 4)));
  CHECK(none.total_offdiag == 0);
  CHECK(none.edges.empty());

  // p=q=2, omega full, gamma diagonal: edges (0,j)-(1,j) only.
  const KronSupport cross = kron_support(estimate_from_mask(BoolMatrix::Constant(2, 2, true)),
                                         estimate_from_mask(BoolMatrix::Identity(2, 2)));
  REQUIRE(cross.edges.size() == 2);
  CHECK(cross.edges[0] == std::make_pair(0, 2));
  CHECK(cross.edges[1] == std::make_pair(1, 3));
  CHECK(cross.total_offdiag == 4);

  // Cap behavior: counts-only fallback, explicit materialize throws.
  const SupportEstimate big_o = estimate_from_mask(BoolMatrix::Constant(8, 8, true));
  const SupportEstimate big_g = estimate_from_mask(BoolMatrix::Constant(8, 8, true));
  const KronSupport capped = kron_support(big_o, big_g, 10);
  CHECK_FALSE(capped.materialized);
  CHECK(capped.total_offdiag == 8 * 56 + 56 * (8 + 56));
  CHECK_THROWS_AS(kron_support(big_o, big_g, 10, true), ConfigError);
}

TEST_CASE("alpha chooser") {
  // Callback mimicking BH behavior: discoveries grow with alpha.
  auto realized = [](double alpha) {
    const long long a = static_cast<long long>(alpha * 100);
    const long long b = static_cast<long long>(alpha * 60);
    return std::make_pair(2 * a, 2 * b);
  };
  const AlphaChoice choice = choose_alpha_for_target(0.15, 30, 40, realized);
  CHECK(choice.alpha > 0.0);
  CHECK_FALSE(choice.zero_discovery);
  // alpha_prime realized at the choice is the closest on the grid.
  for (double alpha : default_alpha_grid()) {
    const auto [a, b] = realized(alpha);
    CHECK(std::fabs(choice.alpha_prime - 0.15) <=
          std::fabs(alpha_prime(alpha, a, b, 30, 40) - 0.15) + 1e-15);
  }

  // Singleton grid returns that alpha.
  const AlphaChoice single = choose_alpha_for_target(0.2, 30, 40, realized, {0.07});
  CHECK(single.alpha == 0.07);

  // All-zero discoveries: smallest alpha, flagged.
  auto nothing = [](double) { return std::make_pair(0LL, 0LL); };
  const AlphaChoice zero = choose_alpha_for_target(0.2, 30, 40, nothing);
  CHECK(zero.alpha == default_alpha_grid().front());
  CHECK(zero.zero_discovery);
  CHECK(zero.alpha_prime == 0.0);

  CHECK_THROWS_AS(choose_alpha_for_target(0.2, 30, 40, realized, {}), ConfigError);
}

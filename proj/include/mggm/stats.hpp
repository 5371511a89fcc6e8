#pragma once

namespace mggm {

// Standard normal CDF, monotone, relative accuracy better than 1e-12 on the
// range the pipeline uses.
double normal_cdf(double x);

// Two-sided tail probability 2*(1 - Phi(|t|)). Evaluated through erfc so it
// stays positive far into the tail (~1.2e-15 at |t| = 8).
double two_sided_p(double t);

// Inverse of normal_cdf on (0, 1).
double normal_quantile(double prob);

}  // namespace mggm

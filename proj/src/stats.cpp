#include "mggm/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mggm {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488016887242097;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;
}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double two_sided_p(double t) { return std::erfc(std::fabs(t) / kSqrt2); }

// Acklam's rational approximation followed by one Halley step against
// normal_cdf, which brings the result to near machine precision.
double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::domain_error("normal_quantile: probability must lie in (0, 1)");
  }

  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};

  const double plow = 0.02425;
  const double phigh = 1.0 - plow;
  double x;
  if (prob < plow) {
    const double u = std::sqrt(-2.0 * std::log(prob));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (prob <= phigh) {
    const double u = prob - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - prob));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }

  const double e = normal_cdf(x) - prob;
  const double g = e * kSqrt2Pi * std::exp(0.5 * x * x);
  x -= g / (1.0 + 0.5 * x * g);
  return x;
}

}  // namespace mggm

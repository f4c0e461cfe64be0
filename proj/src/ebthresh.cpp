#include "pocre/ebthresh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pocre/errors.hpp"
#include "pocre/normal.hpp"

namespace pocre::eb {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// (1 - exp(-z^2/2)) / z^2, continuous at 0 with value 1/2.
double emz_ratio(double z) {
  const double u = 0.5 * z * z;
  if (u < 1e-8) return 0.5 - 0.25 * u;
  return -std::expm1(-u) / (z * z);
}

// Marginal density of the quasi-Cauchy (nonzero) mixture component.
double marginal_nonzero(double z) { return kInvSqrt2Pi * emz_ratio(z); }

// Boundary function for the posterior median at m >= 0 given |z| = z:
// positive while the median exceeds m, single sign change in m.
double median_boundary(double m, double z, double w) {
  const double left = norm_cdf(z - m) - z * norm_pdf(z - m) +
                      (m * z - 1.0) * norm_pdf(z - m) * norm_cdf(-m) / norm_pdf(m);
  const double right =
      0.5 * (1.0 + std::exp(-0.5 * z * z) * (z * z * (1.0 / w - 1.0) - 1.0));
  return left - right;
}

// median_boundary at m = 0, simplified; its positive root in z is the
// threshold. Negative on (0, tau), positive beyond.
double threshold_boundary(double z, double w) {
  return norm_cdf(z) - z * norm_pdf(z) - 0.5 -
         0.5 * z * z * std::exp(-0.5 * z * z) * (1.0 / w - 1.0);
}

void check_weight(double w) {
  if (!(w > 0.0 && w <= 1.0)) {
    throw NumericError("ebthresh: mixture weight must lie in (0, 1]");
  }
}

}  // namespace

double estimate_sigma(const std::vector<double>& z) {
  if (z.empty()) throw NumericError("estimate_sigma: empty input");
  std::vector<double> a(z.size());
  std::transform(z.begin(), z.end(), a.begin(),
                 [](double v) { return std::fabs(v); });
  const std::size_t n = a.size();
  const std::size_t mid = n / 2;
  std::nth_element(a.begin(), a.begin() + mid, a.end());
  double med = a[mid];
  if (n % 2 == 0) {
    const double lower = *std::max_element(a.begin(), a.begin() + mid);
    med = 0.5 * (lower + med);
  }
  return med / norm_quantile(0.75);
}

double weight_lower_bound(std::size_t p) {
  if (p <= 1) return 1.0;
  const double t = std::sqrt(2.0 * std::log(static_cast<double>(p)));
  const double num = norm_cdf(t) - t * norm_pdf(t) - 0.5;
  const double den = 0.5 * t * t * std::exp(-0.5 * t * t);
  return 1.0 / (1.0 + num / den);
}

double marginal_density(double z, double w) {
  return (1.0 - w) * norm_pdf(z) + w * marginal_nonzero(z);
}

double estimate_weight(const std::vector<double>& z_std) {
  if (z_std.empty()) throw NumericError("estimate_weight: empty input");
  const double w_min = weight_lower_bound(z_std.size());
  if (w_min >= 1.0) return 1.0;

  // phi(z) and the nonzero-component marginal do not depend on w;
  // precompute them so each likelihood evaluation is a cheap sweep.
  const std::size_t n = z_std.size();
  std::vector<double> null_part(n), signal_part(n);
  for (std::size_t i = 0; i < n; ++i) {
    null_part[i] = norm_pdf(z_std[i]);
    signal_part[i] = marginal_nonzero(z_std[i]);
  }
  const auto loglik = [&](double w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = (1.0 - w) * null_part[i] + w * signal_part[i];
      acc += std::log(std::max(g, std::numeric_limits<double>::min()));
    }
    return acc;
  };

  // Golden-section search; the log-likelihood is concave in w.
  const double gr = 0.6180339887498948482;
  double a = w_min, b = 1.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = loglik(c), fd = loglik(d);
  for (int it = 0; it < 200 && (b - a) > 1e-8; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = loglik(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = loglik(d);
    }
  }
  double w = 0.5 * (a + b);
  // Snap to the bounds when the optimum sits on them.
  if (loglik(w_min) >= loglik(w)) w = w_min;
  if (loglik(1.0) >= loglik(w)) w = 1.0;
  return std::clamp(w, w_min, 1.0);
}

double threshold_of(double w) {
  check_weight(w);
  if (w == 1.0) return 0.0;  // boundary function positive for all z > 0
  double hi = 1.0;
  while (threshold_boundary(hi, w) < 0.0) hi *= 2.0;
  double lo = 0.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (threshold_boundary(mid, w) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double posterior_median(double z, double w) {
  check_weight(w);
  if (!std::isfinite(z)) throw NumericError("posterior_median: non-finite z");
  const double s = z < 0.0 ? -1.0 : 1.0;
  const double az = std::fabs(z);
  if (az == 0.0) return 0.0;
  // Zero exactly on |z| <= tau(w), matching threshold_of bit for bit.
  if (az <= threshold_of(w)) return 0.0;
  if (az > 25.0) return s * (az - 2.0 / az);  // asymptotic tail
  double lo = 0.0, hi = az;  // median lies in (0, |z|) by shrinkage
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (median_boundary(mid, az, w) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return s * 0.5 * (lo + hi);
}

EbayesResult ebayes_shrink(const std::vector<double>& z, double lambda) {
  if (!(lambda > 0.0)) throw NumericError("ebayes_shrink: lambda must be positive");
  EbayesResult res;
  res.sigma_hat = estimate_sigma(z);
  res.mu_hat.assign(z.size(), 0.0);
  if (res.sigma_hat == 0.0) {
    res.w_hat = weight_lower_bound(z.size());
    res.tau = threshold_of(res.w_hat);
    res.all_zero = true;
    return res;
  }
  const double scale = lambda * res.sigma_hat;
  std::vector<double> z_std(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) z_std[i] = z[i] / scale;
  res.w_hat = estimate_weight(z_std);
  res.tau = threshold_of(res.w_hat);
  bool any = false;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::fabs(z_std[i]) <= res.tau) continue;  // below threshold: exact 0
    res.mu_hat[i] = posterior_median(z_std[i], res.w_hat) * scale;
    any = any || res.mu_hat[i] != 0.0;
  }
  res.all_zero = !any;
  return res;
}

}  // namespace pocre::eb

#pragma once

// Empirical Bayes thresholding under a point-mass + quasi-Cauchy mixture
// prior: robust noise-scale estimation, marginal-likelihood weight
// estimation, and posterior-median shrinkage. All functions are pure.

#include <vector>

namespace pocre::eb {

struct EbayesResult {
  double sigma_hat = 0.0;            // robust noise scale of the input
  double w_hat = 1.0;                // mixture weight in [w_min, 1]
  double tau = 0.0;                  // threshold in standardized units
  std::vector<double> mu_hat;        // shrunken vector, original units
  bool all_zero = false;
};

// median(|z|) / Phi^-1(0.75). Returns 0 when the median of |z| vanishes;
// callers treat that as the degenerate stop signal. Even-length median is
// the mean of the two middle order statistics.
double estimate_sigma(const std::vector<double>& z);

// Lower bound on the mixture weight such that the threshold equals the
// universal threshold sqrt(2 log p). Equals 1 at p = 1.
double weight_lower_bound(std::size_t p);

// Marginal density of one standardized observation under the mixture prior.
double marginal_density(double z, double w);

// argmax over w in [weight_lower_bound(p), 1] of the marginal log-likelihood
// of the standardized vector, by golden-section search (1e-8 in w).
double estimate_weight(const std::vector<double>& z_std);

// Threshold tau(w): posterior median of z is zero exactly when |z| <= tau.
// Nonincreasing in w; tau(1) = 0. w must lie in (0, 1].
double threshold_of(double w);

// Posterior median of mu given standardized z under the mixture prior with
// weight w, by monotone bisection on the closed-form posterior tail mass
// (absolute tolerance 1e-9). Returns exactly 0 iff |z| <= threshold_of(w).
double posterior_median(double z, double w);

// Full shrinkage pass: sigma from estimate_sigma, standardize by
// lambda*sigma, estimate w, take posterior medians entrywise, rescale.
// lambda must be positive.
EbayesResult ebayes_shrink(const std::vector<double>& z, double lambda);

}  // namespace pocre::eb

#pragma once

// Standard normal density, distribution and quantile functions.

namespace pocre {

double norm_pdf(double x);
double norm_cdf(double x);

// Inverse of norm_cdf on (0, 1), Wichura's AS 241 double-precision rational
// approximation. Throws NumericError outside (0, 1).
double norm_quantile(double p);

}  // namespace pocre

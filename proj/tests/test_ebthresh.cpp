#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pocre/ebthresh.hpp"
#include "pocre/errors.hpp"

namespace eb = pocre::eb;

TEST_CASE("estimate_sigma: median over the 0.75 normal quantile") {
  // Entries equal to +-Phi^-1(0.75) make the estimate exactly one.
  std::vector<double> z{0.6744898, -0.6744898, 0.6744898};
  CHECK(eb::estimate_sigma(z) == doctest::Approx(1.0).epsilon(1e-6));

  // Cross-check the constant against the CDF-bisection oracle.
  const double med = 0.6744898;
  CHECK(eb::estimate_sigma(z) ==
        doctest::Approx(med / oracles::normal_quantile_bisect(0.75)).epsilon(1e-10));

  CHECK(eb::estimate_sigma({0.0, 0.0, 0.0, 0.0}) == 0.0);

  // Even length: mean of the middle order statistics.
  std::vector<double> ze{1.0, 3.0, -2.0, 10.0};
  CHECK(eb::estimate_sigma(ze) ==
        doctest::Approx(2.5 / 0.674489750196082).epsilon(1e-12));
}

TEST_CASE("estimate_sigma is positive homogeneous") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> dist;
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> z(31 + rep);
    for (auto& v : z) v = dist(rng);
    auto z3 = z;
    for (auto& v : z3) v *= 3.0;
    CHECK(eb::estimate_sigma(z3) ==
          doctest::Approx(3.0 * eb::estimate_sigma(z)).epsilon(1e-14));
  }
}

TEST_CASE("weight lower bound pins the universal threshold") {
  CHECK(eb::weight_lower_bound(1) == 1.0);
  for (std::size_t p : {5u, 100u, 1000u, 22690u}) {
    const double w_min = eb::weight_lower_bound(p);
    CHECK(w_min > 0.0);
    CHECK(w_min < 1.0);
    CHECK(eb::threshold_of(w_min) ==
          doctest::Approx(std::sqrt(2.0 * std::log(double(p)))).epsilon(1e-8));
  }
  // Values frozen from an independent computation of the closed form.
  CHECK(eb::weight_lower_bound(100) == doctest::Approx(0.0864429263).epsilon(1e-7));
  CHECK(eb::weight_lower_bound(1000) == doctest::Approx(0.0136699506).epsilon(1e-7));
}

TEST_CASE("estimate_weight: small inputs collapse to the lower bound") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  std::vector<double> z(100);
  for (auto& v : z) v = u(rng);
  CHECK(eb::estimate_weight(z) == eb::weight_lower_bound(100));

  // p = 1 forces w = w_min = 1 regardless of the input.
  CHECK(eb::estimate_weight({0.0}) == 1.0);
}

TEST_CASE("estimate_weight matches the grid-search oracle") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> noise;
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t p = 60 + 10 * (rep % 5);
    std::vector<double> z(p);
    const double frac = 0.05 + 0.02 * (rep % 4);
    for (std::size_t i = 0; i < p; ++i) {
      z[i] = noise(rng);
      if (i < frac * p) z[i] += (rep % 2 ? 6.0 : -5.0);
    }
    const double w = eb::estimate_weight(z);
    const double w_oracle = oracles::weight_grid_search(z, eb::weight_lower_bound(p));
    CHECK(std::fabs(w - w_oracle) < 1e-3);
  }

  // 90% near zero, 10% near six.
  std::vector<double> z;
  for (int i = 0; i < 90; ++i) z.push_back(0.1 * noise(rng));
  for (int i = 0; i < 10; ++i) z.push_back(6.0 + 0.1 * noise(rng));
  CHECK(std::fabs(eb::estimate_weight(z) -
                  oracles::weight_grid_search(z, eb::weight_lower_bound(100))) < 1e-3);
}

TEST_CASE("posterior_median basics") {
  for (double w : {0.1, 0.5, 1.0}) CHECK(eb::posterior_median(0.0, w) == 0.0);

  const double m = eb::posterior_median(5.0, 1.0);
  CHECK(m > 4.0);
  CHECK(m < 5.0);
  CHECK(m == doctest::Approx(oracles::posterior_median_quad(5.0, 1.0)).epsilon(1e-6));

  // |z| = 1 sits below the w = 0.5 threshold.
  CHECK(eb::threshold_of(0.5) > 1.0);
  CHECK(eb::posterior_median(1.0, 0.5) == 0.0);
  CHECK(oracles::posterior_median_quad(1.0, 0.5) == 0.0);

  CHECK_THROWS_AS(eb::posterior_median(1.0, 0.0), pocre::NumericError);
  CHECK_THROWS_AS(eb::posterior_median(1.0, 1.5), pocre::NumericError);
  CHECK_THROWS_AS(eb::posterior_median(1.0, -0.2), pocre::NumericError);
}

TEST_CASE("posterior_median matches the quadrature oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uz(-8.0, 8.0), uw(0.02, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    const double z = uz(rng);
    const double w = uw(rng);
    const double ours = eb::posterior_median(z, w);
    const double quad = oracles::posterior_median_quad(z, w);
    CHECK(std::fabs(ours - quad) < 1e-6);
  }
}

TEST_CASE("threshold_of: location and monotonicity") {
  CHECK(eb::threshold_of(1.0) < eb::threshold_of(0.1));
  double prev = eb::threshold_of(0.02);
  for (double w = 0.05; w <= 1.0; w += 0.05) {
    const double t = eb::threshold_of(w);
    CHECK(t <= prev + 1e-12);
    prev = t;
  }
  for (double w : {0.1, 0.5, 0.9}) {
    const double tau = eb::threshold_of(w);
    CHECK(eb::posterior_median(tau - 1e-6, w) == 0.0);
    CHECK(eb::posterior_median(tau + 1e-3, w) != 0.0);
  }
}

TEST_CASE("thresholding properties (i)-(iv)") {
  for (double w : {0.05, 0.3, 0.7, 1.0}) {
    const double tau = eb::threshold_of(w);
    double prev = -1e300;
    for (int i = 0; i < 1000; ++i) {
      const double z = -10.0 + 20.0 * i / 999.0;
      const double m = eb::posterior_median(z, w);
      CHECK(m >= prev - 1e-9);                        // (i) monotone
      CHECK(std::fabs(m) <= std::fabs(z));            // (ii) shrinkage
      CHECK(std::fabs(m + eb::posterior_median(-z, w)) < 1e-9);  // (iii)
      CHECK((m == 0.0) == (std::fabs(z) <= tau));     // (iv) threshold zone
      prev = m;
    }
  }
}

TEST_CASE("ebayes_shrink: degenerate and spike inputs") {
  const auto zero = eb::ebayes_shrink(std::vector<double>(12, 0.0), 0.9);
  CHECK(zero.all_zero);
  CHECK(zero.sigma_hat == 0.0);
  for (double v : zero.mu_hat) CHECK(v == 0.0);

  // One dominant entry, the rest small bounded noise: only the spike survives.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  std::vector<double> z(50);
  for (auto& v : z) v = noise(rng);
  const double sigma = eb::estimate_sigma(z);
  z[7] = 100.0 * sigma;
  const auto res = eb::ebayes_shrink(z, 0.9);
  CHECK_FALSE(res.all_zero);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i == 7) {
      CHECK(res.mu_hat[i] != 0.0);
    } else {
      CHECK(res.mu_hat[i] == 0.0);
    }
  }

  // Oracle pipeline for the surviving entry: grid weight + quadrature median.
  const double sigma_o = eb::estimate_sigma(z);
  std::vector<double> z_std(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) z_std[i] = z[i] / (0.9 * sigma_o);
  const double w_o =
      oracles::weight_grid_search(z_std, eb::weight_lower_bound(z.size()));
  const double mu_o =
      oracles::posterior_median_quad(z_std[7], w_o) * 0.9 * sigma_o;
  CHECK(res.mu_hat[7] == doctest::Approx(mu_o).epsilon(1e-3));

  CHECK_THROWS_AS(eb::ebayes_shrink(z, 0.0), pocre::NumericError);
  CHECK_THROWS_AS(eb::ebayes_shrink(z, -1.0), pocre::NumericError);
}

TEST_CASE("ebayes_shrink: invariants and homogeneity") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> noise;
  std::vector<double> z(200);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = noise(rng) + (i % 17 == 0 ? 7.0 : 0.0);
  }
  const double lambda = 0.85;
  const auto res = eb::ebayes_shrink(z, lambda);
  CHECK(res.w_hat >= eb::weight_lower_bound(z.size()));
  CHECK(res.w_hat <= 1.0);
  const double cut = res.tau * lambda * res.sigma_hat;
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(std::fabs(res.mu_hat[i]) <= std::fabs(z[i]));
    CHECK((res.mu_hat[i] == 0.0) == (std::fabs(z[i]) <= cut));
  }

  // Doubling is exact in floating point; generic scaling close to exact.
  auto z2 = z;
  for (auto& v : z2) v *= 2.0;
  const auto res2 = eb::ebayes_shrink(z2, lambda);
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(res2.mu_hat[i] == 2.0 * res.mu_hat[i]);
  }
  auto z3 = z;
  for (auto& v : z3) v *= 3.0;
  const auto res3 = eb::ebayes_shrink(z3, lambda);
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(res3.mu_hat[i] == doctest::Approx(3.0 * res.mu_hat[i]).epsilon(1e-9));
  }
}

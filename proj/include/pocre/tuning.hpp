#pragma once

// k-fold cross-validation for the thresholding dispersion parameter, plus
// component-count selection for the no-threshold baseline. Preparation
// (centering/scaling) is recomputed inside each training fold so held-out
// rows never leak into the transforms.

#include <cstdint>
#include <vector>

#include "pocre/core.hpp"

namespace pocre::cv {

struct CvReport {
  std::vector<double> grid;      // ascending
  std::vector<double> cv_error;  // mean held-out squared error per observation
  double best_lambda = 0.0;      // ties broken toward the largest lambda
  int folds = 0;
  std::uint64_t seed = 0;
};

struct CvOptions {
  std::vector<double> grid;  // defaults to default_grid() when empty
  int folds = 10;
  std::uint64_t seed = 0;
  bool standardize = true;
  int max_components = 0;  // 0: min(n_train - 1, 30)
};

// {0.80, 0.81, ..., 1.00}; the tuning range the cross-validation sweeps by
// default. Wider grids down to 0.6 can be passed explicitly.
std::vector<double> default_grid();

// Deterministic shuffled fold assignment: entry i is the fold of row i,
// fold sizes differing by at most one.
std::vector<int> fold_assignment(std::size_t n, int folds, std::uint64_t seed);

CvReport cross_validate(const Matrix& x_raw, const Matrix& y_raw,
                        const CvOptions& options);

struct ComponentCvReport {
  std::vector<double> cv_error;  // indexed by component count - 1
  int best_components = 0;       // ties broken toward the smaller count
  int folds = 0;
  std::uint64_t seed = 0;
};

// Held-out error of the no-threshold baseline as a function of how many
// leading components are kept; one fold fit scores every count.
ComponentCvReport cross_validate_components(const Matrix& x_raw,
                                            const Matrix& y_raw,
                                            int max_components, int folds,
                                            std::uint64_t seed,
                                            bool standardize);

}  // namespace pocre::cv

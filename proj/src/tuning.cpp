#include "pocre/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pocre/errors.hpp"

namespace pocre::cv {

namespace {

struct FoldSplit {
  Matrix x_train, y_train, x_test, y_test;
};

FoldSplit split_fold(const Matrix& x, const Matrix& y,
                     const std::vector<int>& assignment, int fold) {
  const std::size_t n = x.rows();
  std::size_t n_test = 0;
  for (int f : assignment) n_test += f == fold;
  FoldSplit s{Matrix(n - n_test, x.cols()), Matrix(n - n_test, y.cols()),
              Matrix(n_test, x.cols()), Matrix(n_test, y.cols())};
  std::size_t it = 0, ir = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (assignment[i] == fold) {
      std::copy_n(x.row(i), x.cols(), s.x_test.row(it));
      std::copy_n(y.row(i), y.cols(), s.y_test.row(it));
      ++it;
    } else {
      std::copy_n(x.row(i), x.cols(), s.x_train.row(ir));
      std::copy_n(y.row(i), y.cols(), s.y_train.row(ir));
      ++ir;
    }
  }
  return s;
}

double heldout_sse(const PocreModel& model, const Matrix& x_test,
                   const Matrix& y_test) {
  const Matrix pred = predict(model, x_test);
  double sse = 0.0;
  for (std::size_t i = 0; i < pred.data().size(); ++i) {
    const double d = pred.data()[i] - y_test.data()[i];
    sse += d * d;
  }
  return sse;
}

}  // namespace

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 80; i <= 100; ++i) g.push_back(i / 100.0);
  return g;
}

std::vector<int> fold_assignment(std::size_t n, int folds, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> assignment(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    assignment[order[pos]] = static_cast<int>(pos % folds);
  }
  return assignment;
}

CvReport cross_validate(const Matrix& x_raw, const Matrix& y_raw,
                        const CvOptions& options) {
  const std::size_t n = x_raw.rows();
  if (options.folds < 2) throw InputError("cross_validate: need at least 2 folds");
  if (static_cast<std::size_t>(options.folds) > n) {
    throw InputError("cross_validate: more folds than observations");
  }
  std::vector<double> grid = options.grid.empty() ? default_grid() : options.grid;
  if (grid.empty()) throw InputError("cross_validate: empty lambda grid");
  for (double g : grid) {
    if (!(g > 0.0)) throw InputError("cross_validate: lambda grid must be positive");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  CvReport report;
  report.grid = grid;
  report.cv_error.assign(grid.size(), 0.0);
  report.folds = options.folds;
  report.seed = options.seed;

  const std::vector<int> assignment = fold_assignment(n, options.folds, options.seed);
  for (int fold = 0; fold < options.folds; ++fold) {
    const FoldSplit s = split_fold(x_raw, y_raw, assignment, fold);
    const DataMatrixPair train = prepare(s.x_train, s.y_train, options.standardize);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const PocreModel model =
          fit(train, {.lambda = grid[g], .max_components = options.max_components});
      report.cv_error[g] += heldout_sse(model, s.x_test, s.y_test);
    }
  }
  for (double& e : report.cv_error) e /= static_cast<double>(n);

  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (report.cv_error[g] <= report.cv_error[best]) best = g;
  }
  report.best_lambda = grid[best];
  return report;
}

ComponentCvReport cross_validate_components(const Matrix& x_raw,
                                            const Matrix& y_raw,
                                            int max_components, int folds,
                                            std::uint64_t seed,
                                            bool standardize) {
  const std::size_t n = x_raw.rows();
  const std::size_t p = x_raw.cols();
  const std::size_t k = y_raw.cols();
  if (folds < 2) throw InputError("cross_validate_components: need at least 2 folds");
  if (static_cast<std::size_t>(folds) > n) {
    throw InputError("cross_validate_components: more folds than observations");
  }
  if (max_components < 1) {
    max_components = static_cast<int>(std::min<std::size_t>(n - 1, 30));
  }

  ComponentCvReport report;
  report.cv_error.assign(max_components, 0.0);
  report.folds = folds;
  report.seed = seed;

  const std::vector<int> assignment = fold_assignment(n, folds, seed);
  for (int fold = 0; fold < folds; ++fold) {
    const FoldSplit s = split_fold(x_raw, y_raw, assignment, fold);
    const DataMatrixPair train = prepare(s.x_train, s.y_train, standardize);
    const PocreModel model = fit(
        train, {.lambda = 1.0, .max_components = max_components, .baseline_pls = true});

    // Score every prefix of the component sequence on the held-out rows by
    // growing beta one component at a time.
    Matrix beta(p, k);
    Vector sse_by_count(max_components, 0.0);
    double running = 0.0;
    for (int c = 0; c < max_components; ++c) {
      if (c < static_cast<int>(model.components.size())) {
        const Component& comp = model.components[c];
        for (std::size_t j = 0; j < p; ++j) {
          if (comp.direction[j] != 0.0) {
            kernels::axpy(comp.direction[j] / model.x_scale[j],
                          comp.response_loading.data(), beta.row(j), k);
          }
        }
        Vector intercept = model.y_center;
        for (std::size_t j = 0; j < p; ++j) {
          kernels::axpy(-model.x_center[j], beta.row(j), intercept.data(), k);
        }
        running = 0.0;
        for (std::size_t i = 0; i < s.x_test.rows(); ++i) {
          for (std::size_t q = 0; q < k; ++q) {
            double pred = intercept[q];
            for (std::size_t j = 0; j < p; ++j) pred += s.x_test(i, j) * beta(j, q);
            const double d = pred - s.y_test(i, q);
            running += d * d;
          }
        }
      }
      sse_by_count[c] = running;  // counts past the stop reuse the last fit
    }
    for (int c = 0; c < max_components; ++c) report.cv_error[c] += sse_by_count[c];
  }
  for (double& e : report.cv_error) e /= static_cast<double>(n);

  int best = 0;
  for (int c = 1; c < max_components; ++c) {
    if (report.cv_error[c] < report.cv_error[best]) best = c;
  }
  report.best_components = best + 1;
  return report;
}

}  // namespace pocre::cv

#pragma once

// Sequential construction of sparse orthogonal components: alternating
// optimization with empirical-Bayes-thresholded loading updates, deflation,
// and assembly of the regression model.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pocre/linalg.hpp"

namespace pocre {

// Centered (and optionally standardized) training pair with the transforms
// recorded so fitted coefficients can be mapped back to original units.
struct DataMatrixPair {
  Matrix x;                     // n x p, column means zero
  Matrix y;                     // n x k, column means zero
  Vector x_center;              // length p
  Vector y_center;              // length k
  Vector x_scale;               // length p, ones when standardization is off
  std::vector<std::uint8_t> x_constant;  // flags for constant columns
  bool standardized = false;
};

// One extracted component.
struct Component {
  Vector loading;          // omega, unit norm, sparse over deflated predictors
  Vector scores;           // eta = X_j * omega, length n
  Vector deflation_row;    // P_j = eta' X_j / (eta' eta), length p
  Vector response_loading; // Q_j = eta' Y / (eta' eta), length k
  Vector direction;        // varpi_j = zeta_j * omega, over original predictors
  int index = 0;           // 1-based extraction order
  int iterations = 0;      // alternations used
  bool converged = true;
};

enum class StopReason { all_thresholded, max_components, degenerate_sigma };

const char* stop_reason_name(StopReason r);
std::optional<StopReason> stop_reason_from_name(const std::string& name);

struct PocreModel {
  std::vector<Component> components;
  Matrix beta;            // p x k, original units
  Vector intercept;       // length k
  double lambda = 0.0;
  bool baseline_pls = false;
  bool standardized = true;
  Vector x_center, x_scale, y_center;
  StopReason stop_reason = StopReason::max_components;

  std::size_t n_predictors() const { return beta.rows(); }
  std::size_t n_responses() const { return beta.cols(); }
  // Predictors with any nonzero coefficient (|beta| > 1e-12), 0-based.
  std::vector<std::size_t> selected_predictors() const;
};

// Deflation state. zeta is kept factored as I - sum_m direction_m *
// deflation_row_m' rather than as a dense p x p matrix; zeta_dense
// materializes it for diagnostics at small p.
struct ExtractionState {
  Matrix x_current;
  std::vector<Vector> directions;      // varpi_1 .. varpi_j
  std::vector<Vector> deflation_rows;  // P_1 .. P_j
  double initial_scale = 0.0;          // ||X_1||_F, set on the first deflation

  Matrix zeta_dense() const;
  // X0 * zeta without materializing zeta.
  Matrix apply_zeta(const Matrix& x0) const;
};

// Center X and Y columns; when standardize, scale X columns by the sample
// standard deviation (divisor n-1). Constant columns get scale 1 and a flag.
DataMatrixPair prepare(const Matrix& x_raw, const Matrix& y_raw, bool standardize);

// Leading eigenvector of Xj' Y Y' Xj by the alternating power recursion,
// sign fixed so the largest-magnitude entry is positive. Empty when the
// cross-covariance Y' Xj is identically zero.
std::optional<Vector> power_leading_vector(const Matrix& xj, const Matrix& y);

struct ExtractOutcome {
  enum class Status { ok, stop_all_thresholded, stop_degenerate_sigma };
  Status status = Status::ok;
  Vector loading;
  int iterations = 0;
  bool converged = true;
};

// One alternating-optimization pass on the current deflated matrix. With
// baseline_pls the thresholding step is the identity, giving plain NIPALS.
ExtractOutcome extract_component(const ExtractionState& state, const Matrix& y,
                                 double lambda, bool baseline_pls);

struct DeflateResult {
  Vector scores;
  Vector deflation_row;
  Vector direction;
};

// Project the extracted component out of state.x_current and extend the
// factored zeta. Empty when the scores vector has zero norm.
std::optional<DeflateResult> deflate(ExtractionState& state, const Vector& loading);

struct FitOptions {
  double lambda = 0.9;
  int max_components = 0;  // 0: min(n - 1, 30)
  bool baseline_pls = false;
};

PocreModel fit(const DataMatrixPair& data, const FitOptions& options);

// Xnew * beta + intercept, original units. Throws ShapeError on a column
// count mismatch.
Matrix predict(const PocreModel& model, const Matrix& x_new);

}  // namespace pocre

#include "pocre/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pocre/ebthresh.hpp"
#include "pocre/errors.hpp"

namespace pocre {

namespace {

constexpr double kPowerTol = 1e-10;
constexpr int kPowerMaxIter = 500;
constexpr double kAlternateTol = 1e-6;
constexpr int kAlternateMaxIter = 200;

// Euclidean distance between unit vectors after sign alignment.
double aligned_change(const Vector& a, const Vector& b) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dp = a[i] - b[i];
    const double dm = a[i] + b[i];
    plus += dp * dp;
    minus += dm * dm;
  }
  return std::sqrt(std::min(plus, minus));
}

// z = M' (M v) for M = Y' Xj held as k rows of length p.
Vector cross_product_apply(const Matrix& m, const Vector& v) {
  Vector mv(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mv[r] = kernels::dot(m.row(r), v.data(), m.cols());
  }
  Vector out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    kernels::axpy(mv[r], m.row(r), out.data(), m.cols());
  }
  return out;
}

}  // namespace

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::all_thresholded: return "all_thresholded";
    case StopReason::max_components: return "max_components";
    case StopReason::degenerate_sigma: return "degenerate_sigma";
  }
  return "unknown";
}

std::optional<StopReason> stop_reason_from_name(const std::string& name) {
  if (name == "all_thresholded") return StopReason::all_thresholded;
  if (name == "max_components") return StopReason::max_components;
  if (name == "degenerate_sigma") return StopReason::degenerate_sigma;
  return std::nullopt;
}

std::vector<std::size_t> PocreModel::selected_predictors() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < beta.rows(); ++j) {
    for (std::size_t c = 0; c < beta.cols(); ++c) {
      if (std::fabs(beta(j, c)) > 1e-12) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

Matrix ExtractionState::zeta_dense() const {
  const std::size_t p = x_current.cols();
  Matrix zeta(p, p);
  for (std::size_t i = 0; i < p; ++i) zeta(i, i) = 1.0;
  for (std::size_t m = 0; m < directions.size(); ++m) {
    linalg::rank1_sub(zeta, directions[m], deflation_rows[m]);
  }
  return zeta;
}

Matrix ExtractionState::apply_zeta(const Matrix& x0) const {
  Matrix out = x0;
  for (std::size_t m = 0; m < directions.size(); ++m) {
    const Vector xw = linalg::matvec(x0, directions[m]);
    linalg::rank1_sub(out, xw, deflation_rows[m]);
  }
  return out;
}

DataMatrixPair prepare(const Matrix& x_raw, const Matrix& y_raw, bool standardize) {
  const std::size_t n = x_raw.rows();
  const std::size_t p = x_raw.cols();
  const std::size_t k = y_raw.cols();
  if (n < 2) throw NumericError("prepare: need at least two observations");
  if (p < 1 || k < 1) throw ShapeError("prepare: empty predictor or response block");
  if (y_raw.rows() != n) {
    throw ShapeError("prepare: X has " + std::to_string(n) + " rows but Y has " +
                     std::to_string(y_raw.rows()));
  }
  for (double v : x_raw.data()) {
    if (!std::isfinite(v)) throw NumericError("prepare: non-finite entry in X");
  }
  for (double v : y_raw.data()) {
    if (!std::isfinite(v)) throw NumericError("prepare: non-finite entry in Y");
  }

  DataMatrixPair out;
  out.x = x_raw;
  out.y = y_raw;
  out.standardized = standardize;
  out.x_center.assign(p, 0.0);
  out.y_center.assign(k, 0.0);
  out.x_scale.assign(p, 1.0);
  out.x_constant.assign(p, 0);

  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(1.0, out.x.row(i), out.x_center.data(), p);
  }
  kernels::scal(1.0 / static_cast<double>(n), out.x_center.data(), p);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(-1.0, out.x_center.data(), out.x.row(i), p);
  }

  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(1.0, out.y.row(i), out.y_center.data(), k);
  }
  kernels::scal(1.0 / static_cast<double>(n), out.y_center.data(), k);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::axpy(-1.0, out.y_center.data(), out.y.row(i), k);
  }

  Vector sumsq(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = out.x.row(i);
    for (std::size_t j = 0; j < p; ++j) sumsq[j] += row[j] * row[j];
  }
  for (std::size_t j = 0; j < p; ++j) {
    const double sd = std::sqrt(sumsq[j] / static_cast<double>(n - 1));
    if (sd <= 0.0) {
      out.x_constant[j] = 1;
      out.x_scale[j] = 1.0;
    } else if (standardize) {
      out.x_scale[j] = sd;
    }
  }
  if (standardize) {
    Vector inv(p);
    for (std::size_t j = 0; j < p; ++j) inv[j] = 1.0 / out.x_scale[j];
    for (std::size_t i = 0; i < n; ++i) kernels::mul(out.x.row(i), inv.data(), p);
  }
  return out;
}

std::optional<Vector> power_leading_vector(const Matrix& xj, const Matrix& y) {
  const std::size_t k = y.cols();

  // psi starts from the first response column whose cross-covariance with
  // Xj is nonzero; if none exists the recursion has nothing to work with.
  Vector psi;
  bool seeded = false;
  for (std::size_t c = 0; c < k && !seeded; ++c) {
    Vector cand(y.rows());
    for (std::size_t i = 0; i < y.rows(); ++i) cand[i] = y(i, c);
    Vector gamma = linalg::matvec_t(xj, cand);
    if (linalg::max_abs(gamma) > 0.0) {
      psi = std::move(cand);
      seeded = true;
    }
  }
  if (!seeded) return std::nullopt;

  Vector gamma_prev;
  Vector gamma;
  for (int it = 0; it < kPowerMaxIter; ++it) {
    gamma = linalg::matvec_t(xj, psi);
    const double gn = linalg::norm2(gamma);
    if (gn == 0.0) return std::nullopt;
    kernels::scal(1.0 / gn, gamma.data(), gamma.size());
    if (!gamma_prev.empty() && aligned_change(gamma, gamma_prev) < kPowerTol) {
      break;
    }
    gamma_prev = gamma;
    const Vector eta = linalg::matvec(xj, gamma);
    Vector phi = linalg::matvec_t(y, eta);
    const double pn = linalg::norm2(phi);
    if (pn == 0.0) return std::nullopt;
    kernels::scal(1.0 / pn, phi.data(), phi.size());
    psi = linalg::matvec(y, phi);
  }
  linalg::flip_to_positive_peak(gamma);
  return gamma;
}

ExtractOutcome extract_component(const ExtractionState& state, const Matrix& y,
                                 double lambda, bool baseline_pls) {
  if (!(lambda > 0.0)) throw NumericError("extract_component: lambda must be positive");
  ExtractOutcome out;

  auto init = power_leading_vector(state.x_current, y);
  if (!init) {
    out.status = ExtractOutcome::Status::stop_degenerate_sigma;
    return out;
  }
  Vector gamma = std::move(*init);

  // M = Y' Xj, k x p; every product with M'M goes through it.
  const Matrix m = linalg::gram_t(y, state.x_current);

  Vector dir_prev = gamma;
  for (int it = 1; it <= kAlternateMaxIter; ++it) {
    out.iterations = it;

    Vector alpha = cross_product_apply(m, gamma);
    const double an = linalg::norm2(alpha);
    if (an == 0.0) {
      out.status = ExtractOutcome::Status::stop_degenerate_sigma;
      return out;
    }
    kernels::scal(1.0 / an, alpha.data(), alpha.size());

    Vector z = cross_product_apply(m, alpha);
    if (baseline_pls) {
      gamma = std::move(z);
    } else {
      auto shrunk = eb::ebayes_shrink(z, lambda);
      if (shrunk.sigma_hat == 0.0) {
        out.status = ExtractOutcome::Status::stop_degenerate_sigma;
        return out;
      }
      if (shrunk.all_zero) {
        out.status = ExtractOutcome::Status::stop_all_thresholded;
        return out;
      }
      gamma = std::move(shrunk.mu_hat);
    }

    Vector dir = gamma;
    linalg::normalize(dir);
    const double change = aligned_change(dir, dir_prev);
    dir_prev = std::move(dir);
    if (change < kAlternateTol) break;
    if (it == kAlternateMaxIter) out.converged = false;
  }

  out.loading = std::move(dir_prev);
  linalg::flip_to_positive_peak(out.loading);
  return out;
}

std::optional<DeflateResult> deflate(ExtractionState& state, const Vector& loading) {
  if (state.initial_scale == 0.0) {
    state.initial_scale = linalg::frobenius_norm(state.x_current);
  }
  DeflateResult res;
  res.scores = linalg::matvec(state.x_current, loading);
  const double ss = linalg::dot(res.scores, res.scores);
  // Scores at the rounding floor of the original data are numerically null;
  // dividing by them would blow up P and Q.
  const double floor = 1e-12 * state.initial_scale;
  if (ss <= floor * floor) return std::nullopt;

  res.deflation_row = linalg::matvec_t(state.x_current, res.scores);
  kernels::scal(1.0 / ss, res.deflation_row.data(), res.deflation_row.size());

  // varpi_j = zeta_j * omega = omega - sum_m varpi_m (P_m . omega)
  res.direction = loading;
  for (std::size_t mm = 0; mm < state.directions.size(); ++mm) {
    const double c = linalg::dot(state.deflation_rows[mm], loading);
    kernels::axpy(-c, state.directions[mm].data(), res.direction.data(),
                  res.direction.size());
  }

  linalg::rank1_sub(state.x_current, res.scores, res.deflation_row);
  state.directions.push_back(res.direction);
  state.deflation_rows.push_back(res.deflation_row);
  return res;
}

PocreModel fit(const DataMatrixPair& data, const FitOptions& options) {
  if (!(options.lambda > 0.0)) throw NumericError("fit: lambda must be positive");
  const std::size_t n = data.x.rows();
  const std::size_t p = data.x.cols();
  const std::size_t k = data.y.cols();
  const int max_components =
      options.max_components > 0
          ? options.max_components
          : static_cast<int>(std::min<std::size_t>(n - 1, 30));

  PocreModel model;
  model.lambda = options.lambda;
  model.baseline_pls = options.baseline_pls;
  model.standardized = data.standardized;
  model.x_center = data.x_center;
  model.x_scale = data.x_scale;
  model.y_center = data.y_center;
  model.stop_reason = StopReason::max_components;

  ExtractionState state{data.x, {}, {}};

  for (int j = 1; j <= max_components; ++j) {
    auto outcome = extract_component(state, data.y, options.lambda,
                                     options.baseline_pls);
    if (outcome.status == ExtractOutcome::Status::stop_all_thresholded) {
      model.stop_reason = StopReason::all_thresholded;
      break;
    }
    if (outcome.status == ExtractOutcome::Status::stop_degenerate_sigma) {
      model.stop_reason = StopReason::degenerate_sigma;
      break;
    }
    auto defl = deflate(state, outcome.loading);
    if (!defl) {
      model.stop_reason = StopReason::degenerate_sigma;
      break;
    }

    Component comp;
    comp.loading = std::move(outcome.loading);
    comp.scores = std::move(defl->scores);
    comp.deflation_row = std::move(defl->deflation_row);
    comp.direction = std::move(defl->direction);
    comp.index = j;
    comp.iterations = outcome.iterations;
    comp.converged = outcome.converged;

    const double ss = linalg::dot(comp.scores, comp.scores);
    comp.response_loading = linalg::matvec_t(data.y, comp.scores);
    kernels::scal(1.0 / ss, comp.response_loading.data(), k);

    model.components.push_back(std::move(comp));
  }

  // beta in standardized coordinates, then mapped to original units.
  model.beta = Matrix(p, k);
  for (const Component& comp : model.components) {
    for (std::size_t j = 0; j < p; ++j) {
      if (comp.direction[j] != 0.0) {
        kernels::axpy(comp.direction[j], comp.response_loading.data(),
                      model.beta.row(j), k);
      }
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (model.x_scale[j] != 1.0) {
      kernels::scal(1.0 / model.x_scale[j], model.beta.row(j), k);
    }
  }
  model.intercept = model.y_center;
  for (std::size_t j = 0; j < p; ++j) {
    kernels::axpy(-model.x_center[j], model.beta.row(j), model.intercept.data(), k);
  }
  return model;
}

Matrix predict(const PocreModel& model, const Matrix& x_new) {
  if (x_new.cols() != model.beta.rows()) {
    throw ShapeError("predict: model expects " + std::to_string(model.beta.rows()) +
                     " predictors, got " + std::to_string(x_new.cols()));
  }
  const std::size_t m = x_new.rows();
  const std::size_t p = x_new.cols();
  const std::size_t k = model.beta.cols();
  Matrix beta_t(k, p);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t c = 0; c < k; ++c) beta_t(c, j) = model.beta(j, c);
  }
  Matrix out(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    const double* xrow = x_new.row(i);
    double* row = out.row(i);
    for (std::size_t c = 0; c < k; ++c) {
      row[c] = model.intercept[c] + kernels::dot(xrow, beta_t.row(c), p);
    }
  }
  return out;
}

}  // namespace pocre

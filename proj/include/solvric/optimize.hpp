#pragma once

#include <cstdint>
#include <optional>

#include "solvric/certificate.hpp"

namespace solvric {

struct OptimizeOptions {
  int budget = 20000;  ///< total objective evaluations over all restarts
  int restarts = 16;
  std::uint32_t seed = 0;
  double perturbation = 0.5;  ///< log-space spread of the random starts
  std::optional<Mat> initial;  ///< warm-start Gram matrix for restart 0
  /// Extra margin: certified also requires max eigenvalue < -certify_tol.
  double certify_tol = 0.0;
};

struct OptimizeResult {
  Certificate best;  ///< certificate of the best metric found (det Q = 1)
  bool certified = false;
  int evaluations = 0;
  int restarts_run = 0;
};

/// Lower-triangular log-Cholesky coordinates: the diagonal of L is exp(x_i),
/// Q = L L^T scaled to det Q = 1.
Mat gram_from_params(const Vec& x, int n);
Vec params_from_gram(const Mat& q);

/// Largest Ricci eigenvalue of (g, Q / det(Q)^{1/n}).
double normalized_max_ricci(const LieAlgebra& g, const Mat& q);

/// Nelder-Mead minimization of normalized_max_ricci over metrics, restarted
/// from the identity (or `initial`) and from seeded random perturbations.
/// Stops after the first restart that yields a certificate.
OptimizeResult optimize_metric(const LieAlgebra& g, const OptimizeOptions& opt = {});

}  // namespace solvric

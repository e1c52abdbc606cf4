#pragma once

#include <string>

#include "solvric/ricci.hpp"

namespace solvric {

/// A metric together with its recomputed Ricci spectrum.
struct Certificate {
  InnerProduct metric;
  Mat ricci;        ///< Ricci matrix in the orthonormal frame of `metric`
  Vec eigenvalues;  ///< ascending
  double max_eigenvalue = 0.0;
  double tolerance = 0.0;  ///< certified iff max_eigenvalue < -tolerance
  double s = 0.0;          ///< degeneration parameter used by the pullback
  std::string provenance;

  bool certified() const { return max_eigenvalue < -tolerance; }
};

/// Computes the Ricci spectrum of (g, metric) from scratch.
/// tolerance = 1e-9 * (1 + ||Ric||).
Certificate make_certificate(const LieAlgebra& g, const InnerProduct& metric, std::string provenance);

/// Recomputes the Ricci matrix and checks it against the stored one
/// (<= 1e-9 relative) and the sign condition.
bool verify_certificate(const LieAlgebra& g, const Certificate& c);

}  // namespace solvric

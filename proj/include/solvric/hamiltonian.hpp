#pragma once

#include <string>
#include <vector>

#include "solvric/linalg.hpp"

namespace solvric {

enum class HamBlockType { Rotation, Hyperbolic, Quad };
std::string to_string(HamBlockType t);

/// Canonical blocks, all with the symplectic form [[0, I_q], [-I_q, 0]]:
///   Rotation   [[0, nu], [-nu, 0]]                         (q = 1)
///   Hyperbolic diag(mu, -mu), mu >= 0                       (q = 1)
///   Quad       [[A, 0], [0, -A^T]], A = [[mu, nu], [-nu, mu]]  (q = 2)
struct HamBlock {
  HamBlockType type = HamBlockType::Hyperbolic;
  double mu = 0.0;
  double nu = 0.0;
  int q = 1;
  int offset = 0;
};

struct HamiltonianForm {
  /// Columns form the canonical basis: C^T J C = canonical_J.
  Mat symplectic_change;
  std::vector<HamBlock> blocks;
  Mat canonical;    ///< C^{-1} S C, block diagonal
  Mat canonical_J;  ///< block diagonal symplectic form
};

Mat canonical_block(const HamBlock& b);
Mat canonical_symplectic_block(int q);

/// Standard J = [[0, I_p], [-I_p, 0]].
Mat standard_symplectic(int p);

/// Requires J S + S^T J = 0 and S semisimple. Throws NotHamiltonian,
/// NotSemisimple, VerificationFailed.
HamiltonianForm hamiltonian_normal_form(const Mat& s, const Mat& j);

}  // namespace solvric

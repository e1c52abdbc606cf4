#pragma once

#include <vector>

#include "solvric/decide.hpp"
#include "solvric/degenerate.hpp"
#include "solvric/optimize.hpp"

namespace solvric {

struct ConstructOptions {
  PullbackOptions pullback;
  OptimizeOptions fallback;  ///< used only when no degeneration recipe applies
};

/// Integer exponents d_1 < d_2 < ... for the blocks of a block-triangular
/// nilradical basis: d_c exceeds d_a + d_b whenever [block a, block b] has a
/// component in block c, and exceeds d_b whenever ad_Y maps block b into
/// block c. `block_of[i]` is the block of basis vector i < l; basis vectors
/// i >= l are the complement. Throws VerificationFailed if the basis is not
/// triangular.
std::vector<double> degeneration_exponents(const LieAlgebra& adapted, const std::vector<int>& block_of, int l);

/// Metric for an algebra whose nilradical weights are all positive on
/// `witness` (coordinates of g): degenerate to the block-diagonal limit,
/// pick an orthonormal basis there, pull it back.
Certificate construct_general(const Analysis& an, const Vec& witness, const ConstructOptions& opt = {});

/// Heisenberg nilradical: Hamiltonian normal form of N_Y - lambda/2 and the
/// explicit block scales; extra rank via short complement vectors.
Certificate construct_heisenberg(const Analysis& an, const HeisenbergData& hd, const Vec& witness,
                                 const ConstructOptions& opt = {});

/// Standard filiform nilradical. Rank one uses the convex-hull coefficients
/// of the diagonal Ricci entries; rank two picks the element with a = d = 1
/// and falls through to construct_general.
Certificate construct_filiform(const Analysis& an, const FiliformData& fd, const Vec& witness,
                               const ConstructOptions& opt = {});

/// Convex-hull coefficients (c_1..c_{l-2}, c_E1, c_E2) of a V_1 + d V_2.
Vec filiform_hull_coefficients(int l, double a, double d);

/// Rank-one filiform parameters for a limit with ad_Y = diag(a, d, a+d, ...)
/// and trace t. Vectors are 1-based (entry 0 unused): xi_2..xi_{l-1} and the
/// scales a_1..a_l of the orthonormal basis e_i = a_i X_i. `gram` is the
/// resulting Gram matrix on X_1..X_l. Throws HullCoefficientNonpositive.
struct FiliformRecipe {
  Vec hull;
  double eta = 0.0;
  Vec xi;
  Vec scale;
  Mat gram;
};
FiliformRecipe filiform_recipe(int l, double a, double d, double t);

/// Dispatches on the nilradical class. Throws PreconditionFailed unless the
/// decision is Exists.
Certificate construct_metric(const Analysis& an, const OverallDecision& dec, const ConstructOptions& opt = {});

}  // namespace solvric

#pragma once

#include <string>
#include <vector>

#include "solvric/linalg.hpp"

namespace solvric {

/// [e_i, e_j] contains c * e_k. Indices are 0-based; stored with i < j.
struct StructureConstant {
  int i = 0;
  int j = 0;
  int k = 0;
  double c = 0.0;
};

/// A real Lie algebra given by structure constants relative to a fixed basis.
///
/// Only constants with i < j are stored; antisymmetry is implicit. The dense
/// adjoint matrices ad(e_i) are materialized at construction, so every
/// algebraic query below works on small dense matrices.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Canonicalizes (i > j entries are flipped, duplicates summed, zeros
  /// dropped) and rejects brackets violating the Jacobi identity.
  LieAlgebra(int dim, std::vector<StructureConstant> constants,
             std::vector<std::string> labels = {});

  /// Same as the constructor but skips the Jacobi check.
  static LieAlgebra unchecked(int dim, std::vector<StructureConstant> constants,
                              std::vector<std::string> labels = {});

  /// Builds the algebra whose basis vector e_i has adjoint matrix `ad[i]`.
  /// Entries with magnitude <= `drop_tol` are discarded.
  static LieAlgebra from_adjoints(const std::vector<Mat>& ad, std::vector<std::string> labels = {},
                                  double drop_tol = 0.0, bool check_jacobi = true);

  int dim() const { return dim_; }
  const std::vector<StructureConstant>& constants() const { return constants_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Label of basis vector i (generated as "e<i+1>" when none were given).
  std::string label(int i) const;

  /// Adjoint matrix of the basis vector e_i (column j = [e_i, e_j]).
  const Mat& ad(int i) const { return ad_[static_cast<std::size_t>(i)]; }
  const std::vector<Mat>& ads() const { return ad_; }

  /// Largest absolute structure constant.
  double scale() const { return scale_; }
  /// max(1, scale()), the reference magnitude for relative tolerances.
  double tol_scale() const { return scale_ > 1.0 ? scale_ : 1.0; }

 private:
  void build(bool check_jacobi);

  int dim_ = 0;
  std::vector<StructureConstant> constants_;
  std::vector<std::string> labels_;
  std::vector<Mat> ad_;
  double scale_ = 0.0;
};

Vec bracket(const LieAlgebra& alg, const Vec& x, const Vec& y);

/// Max over basis triples of the norm of the cyclic Jacobi sum.
double jacobi_defect(const LieAlgebra& alg);

/// Matrix of ad_y; linear in y.
Mat adjoint_matrix(const LieAlgebra& alg, const Vec& y);

/// B(u, v) = trace(ad_u ad_v) on basis vectors.
Mat killing_form(const LieAlgebra& alg);

/// (trace ad_{e_1}, ..., trace ad_{e_n}).
Vec trace_form(const LieAlgebra& alg);

/// Span of all brackets [a, b] with a in A and b in B.
Subspace bracket_span(const LieAlgebra& alg, const Subspace& a, const Subspace& b,
                      double rel_tol = kRankTol);

/// C^0 = g, C^{k+1} = [g, C^k]; the returned chain ends at the first repeated
/// dimension (0 for nilpotent algebras).
std::vector<Subspace> lower_central_series(const LieAlgebra& alg, double rel_tol = kRankTol);

/// D^0 = g, D^{k+1} = [D^k, D^k]; depth capped at 2n.
std::vector<Subspace> derived_series(const LieAlgebra& alg, double rel_tol = kRankTol);

bool is_solvable(const LieAlgebra& alg, double rel_tol = kRankTol);
bool is_nilpotent(const LieAlgebra& alg, double rel_tol = kRankTol);
bool is_unimodular(const LieAlgebra& alg, double rel_tol = kRankTol);

Subspace center(const LieAlgebra& alg, double rel_tol = kRankTol);

/// Maximal nilpotent ideal of a solvable algebra: the joint kernel of the
/// diagonal weight forms of the triangularized adjoint representation.
/// Throws NotSolvable.
Subspace nilradical(const LieAlgebra& alg, double rel_tol = kRankTol);

/// The bracket induced on a subalgebra, written in the subspace's orthonormal
/// basis. Throws InvalidInput if the subspace is not closed under the bracket.
LieAlgebra restrict_to(const LieAlgebra& alg, const Subspace& sub, double rel_tol = kRankTol);

/// Express the bracket in the basis given by the columns of T:
/// (T.mu)(x, y) = T^{-1} mu(T x, T y). Throws Singular.
LieAlgebra change_basis(const LieAlgebra& alg, const Mat& t);

/// Max over basis pairs of || D[x,y] - [Dx,y] - [x,Dy] ||.
double leibniz_defect(const LieAlgebra& alg, const Mat& d);

/// [Y_j, Y_k] = sum_a value(a) X_a inside the nilpotent part of an extension.
struct MixedBracket {
  int j = 0;
  int k = 0;
  Vec value;
};

/// Semidirect-type extension of `nil` by derivations: the result has basis
/// (X_1..X_l, Y_1..Y_m) with [Y_j, X] = derivations[j] X.
/// Throws NotADerivation or JacobiViolated.
LieAlgebra make_extension(const LieAlgebra& nil, const std::vector<Mat>& derivations,
                          const std::vector<MixedBracket>& mixed = {});

}  // namespace solvric

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solvric/lie_algebra.hpp"
#include "solvric/triangulate.hpp"

namespace solvric {

enum class NilKind { Abelian, Heisenberg, StandardFiliform, Other };

struct NilradicalClass {
  NilKind kind = NilKind::Other;
  int p = 0;  ///< Heisenberg: dim = 2p + 1
  int l = 0;  ///< filiform: dim = l
  /// Columns are the adapted basis in the coordinates of the classified
  /// algebra: (X_1..X_p, X_{p+1}..X_{2p}, Z) or the chain (X_1..X_l).
  Mat adapted_basis;
  std::string diagnostics;
};

/// "Abelian(3)", "Heisenberg(2)", "StandardFiliform(5)", "Other".
std::string describe(const NilradicalClass& c);

/// Throws NotNilpotent.
NilradicalClass classify_nilradical(const LieAlgebra& nil);

/// Solvable algebra together with its nilradical and the class of the
/// nilradical. `nil_alg` is written in the orthonormal basis of `nil`.
struct Analysis {
  LieAlgebra g;
  Subspace nil;
  LieAlgebra nil_alg;
  NilradicalClass cls;
  /// Columns span a complement of the nilradical (Euclidean orthogonal).
  Mat complement;
  int rank() const { return static_cast<int>(complement.cols()); }
};

/// Throws NotSolvable.
Analysis analyze(const LieAlgebra& g);

struct HeisenbergData {
  int p = 0;
  int m = 0;
  /// Columns X_1..X_{2p}, Z, Y_1..Y_m in the coordinates of g.
  Mat basis;
  /// [e_u, Z] = lambda(u) Z, as a covector on g coordinates.
  Vec lambda;
  /// lambda(Y_k) for the complement basis.
  Vec lambda_y;
  /// Matrix of ad_{Y_k} on the quotient n/z in the basis X_1..X_{2p}.
  std::vector<Mat> N;
  WeightData dforms;
  Mat J;
};

/// Throws NilradicalMismatch.
HeisenbergData heisenberg_data(const Analysis& an);

struct FiliformData {
  int l = 0;
  int m = 0;
  /// Columns X_1..X_l, Y_1..Y_m in the coordinates of g.
  Mat basis;
  Vec lambda;    ///< covector on g coordinates: [e_u, X_l] = lambda(u) X_l
  Vec iota;      ///< covector on g coordinates: trace of ad_{e_u} on the ideal
  Vec lambda_y;  ///< lambda(Y_k)
  Vec iota_y;    ///< iota(Y_k)
  Subspace ideal;
  /// Rank-one extensions: diagonal entries of (ad_Y)|n and its trace.
  std::optional<double> a, d, t;
};

/// Throws NilradicalMismatch or RankTooHigh.
FiliformData filiform_data(const Analysis& an);

}  // namespace solvric

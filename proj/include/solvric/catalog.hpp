#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solvric/lie_algebra.hpp"
#include "solvric/lp.hpp"

namespace solvric {

/// Basis (X_1..X_p, X_{p+1}..X_{2p}, Z) with [X_i, X_{p+i}] = Z.
LieAlgebra heisenberg_algebra(int p);
/// Basis X_1..X_l with [X_1, X_i] = X_{i+1} for 2 <= i < l.
LieAlgebra filiform_algebra(int l);
LieAlgebra abelian_algebra(int n);

/// R^k extended by diag(d): [Y, X_i] = d_i X_i.
LieAlgebra diagonal_abelian_extension(const Vec& d);
/// Heisenberg algebra extended by diag(d_1..d_{2p}, lambda) with
/// lambda = d_i + d_{p+i} for every i. Throws NotADerivation otherwise.
LieAlgebra heisenberg_extension(int p, const Vec& d);
/// Filiform algebra extended by diag(a, d, a + d, ..., (l-2)a + d).
LieAlgebra filiform_extension(int l, double a, double d);
/// Filiform algebra extended by both diagonal derivations.
LieAlgebra filiform_rank_two(int l);
/// R^2 extended by [[alpha, -beta], [beta, alpha]].
LieAlgebra spiral_algebra(double alpha, double beta);
/// (h_3 + R) extended by diag(d_1, d_2, d_1 + d_2, d_3).
LieAlgebra heisenberg_plus_line(double d1, double d2, double d3);

struct CatalogEntry {
  std::string name;
  std::string description;
  LieAlgebra algebra;
  std::optional<Verdict> expected;
  std::string nil_class;  ///< as printed by describe()
};

/// Names of the curated examples.
std::vector<std::string> catalog_names();

/// Accepts the curated names and the parametric forms
///   abelian:N  heisenberg:P  filiform:L  hyperbolic:N
///   heisenberg:P:diag=d1,...  filiform:L:a=A:d=D  filiform:L:rank2
///   spiral:ALPHA:BETA  abelian:K:diag=d1,...  h3plusR:diag=d1,d2,d3
/// Throws InvalidInput for anything else.
CatalogEntry catalog_entry(const std::string& name);

}  // namespace solvric

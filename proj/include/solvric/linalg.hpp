#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace solvric {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Relative tolerance used for every rank/kernel decision unless a caller
/// overrides it.
inline constexpr double kRankTol = 1e-9;

/// Orthonormal basis (columns) of the column space of `a`; singular values at
/// or below `abs_tol` are treated as zero.
Mat column_space(const Mat& a, double abs_tol);

/// Orthonormal basis (columns) of the null space of `a`.
Mat null_space(const Mat& a, double abs_tol);
CMat null_space(const CMat& a, double abs_tol);

int numeric_rank(const Mat& a, double abs_tol);

/// Orthonormal basis of the orthogonal complement of span(basis) in R^n.
Mat orthogonal_complement(const Mat& basis, int ambient);

/// Stacks the columns of a matrix into a vector.
Vec vectorize(const Mat& m);

double max_abs(const Mat& m);

/// A linear subspace of R^n given by orthonormal spanning columns.
class Subspace {
 public:
  Subspace() = default;
  /// Orthonormalizes the columns of `spanning` (rank decided at `abs_tol`).
  Subspace(int ambient, const Mat& spanning, double abs_tol = 1e-10);

  static Subspace whole(int ambient);
  static Subspace zero(int ambient);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  Mat projector() const { return basis_ * basis_.transpose(); }
  /// Distance of v from the subspace.
  double residual(const Vec& v) const;
  bool contains(const Vec& v, double tol) const;
  bool contains(const Subspace& other, double tol) const;

  Subspace complement() const;
  Subspace intersect(const Subspace& other, double abs_tol = 1e-9) const;
  Subspace sum(const Subspace& other, double abs_tol = 1e-10) const;

 private:
  int ambient_ = 0;
  Mat basis_;
};

}  // namespace solvric

#include "solvric/linalg.hpp"

#include <algorithm>

namespace solvric {

Mat column_space(const Mat& a, double abs_tol) {
  if (a.cols() == 0 || a.rows() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& a, double abs_tol) {
  const auto n = a.cols();
  if (n == 0) return Mat(0, 0);
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return svd.matrixV().rightCols(n - r);
}

CMat null_space(const CMat& a, double abs_tol) {
  const auto n = a.cols();
  if (n == 0) return CMat(0, 0);
  if (a.rows() == 0) return CMat::Identity(n, n);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return svd.matrixV().rightCols(n - r);
}

int numeric_rank(const Mat& a, double abs_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > abs_tol) ++r;
  return r;
}

Mat orthogonal_complement(const Mat& basis, int ambient) {
  if (basis.cols() == 0) return Mat::Identity(ambient, ambient);
  return null_space(Mat(basis.transpose()), 1e-10);
}

Vec vectorize(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Subspace::Subspace(int ambient, const Mat& spanning, double abs_tol) : ambient_(ambient) {
  basis_ = spanning.cols() == 0 ? Mat(ambient, 0) : column_space(spanning, abs_tol);
}

Subspace Subspace::whole(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Mat::Identity(ambient, ambient);
  return s;
}

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Mat(ambient, 0);
  return s;
}

double Subspace::residual(const Vec& v) const {
  if (dim() == 0) return v.norm();
  return (v - basis_ * (basis_.transpose() * v)).norm();
}

bool Subspace::contains(const Vec& v, double tol) const { return residual(v) <= tol; }

bool Subspace::contains(const Subspace& other, double tol) const {
  for (int c = 0; c < other.dim(); ++c)
    if (!contains(Vec(other.basis().col(c)), tol)) return false;
  return true;
}

Subspace Subspace::complement() const {
  Subspace s;
  s.ambient_ = ambient_;
  s.basis_ = orthogonal_complement(basis_, ambient_);
  return s;
}

Subspace Subspace::intersect(const Subspace& other, double abs_tol) const {
  if (dim() == 0 || other.dim() == 0) return zero(ambient_);
  // x = U a = V b  <=>  [U, -V] (a, b) = 0
  Mat stacked(ambient_, dim() + other.dim());
  stacked << basis_, -other.basis_;
  Mat ker = null_space(stacked, abs_tol);
  if (ker.cols() == 0) return zero(ambient_);
  return Subspace(ambient_, basis_ * ker.topRows(dim()), abs_tol);
}

Subspace Subspace::sum(const Subspace& other, double abs_tol) const {
  Mat stacked(ambient_, dim() + other.dim());
  stacked << basis_, other.basis_;
  return Subspace(ambient_, stacked, abs_tol);
}

}  // namespace solvric

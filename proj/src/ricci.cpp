#include "solvric/ricci.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "solvric/errors.hpp"

namespace solvric {

namespace {

// Columns of v re-expressed so that they are orthonormal for q.
Mat q_orthonormalize(const Mat& v, const Mat& q) {
  if (v.cols() == 0) return v;
  Mat g = v.transpose() * q * v;
  Eigen::LLT<Mat> llt(0.5 * (g + g.transpose()));
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("Gram matrix of frame is not positive definite");
  Mat linv = llt.matrixL().solve(Mat::Identity(g.rows(), g.cols()));
  return v * linv.transpose();
}

Mat sym(const Mat& a) { return 0.5 * (a + a.transpose()); }

}  // namespace

InnerProduct::InnerProduct(Mat gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw DimensionMismatch("Gram matrix must be square");
  if (!gram_.allFinite()) throw NotPositiveDefinite("Gram matrix has non-finite entries");
  const double nrm = gram_.norm();
  if ((gram_ - gram_.transpose()).norm() > 1e-12 * std::max(1.0, nrm))
    throw NotPositiveDefinite("Gram matrix is not symmetric");
  gram_ = sym(gram_);
  if (gram_.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(gram_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= 0.0) throw NotPositiveDefinite("Gram matrix is not positive definite");
  }
}

MetricLieAlgebra::MetricLieAlgebra(LieAlgebra a, InnerProduct m) : alg(std::move(a)), metric(std::move(m)) {
  if (alg.dim() != metric.dim())
    throw DimensionMismatch("metric of dimension " + std::to_string(metric.dim()) + " for algebra of dimension " +
                            std::to_string(alg.dim()));
}

Mat RicciBlocks::assembled() const {
  Mat r(l + m, l + m);
  r.topLeftCorner(l, l) = R1;
  r.topRightCorner(l, m) = R2;
  r.bottomLeftCorner(m, l) = R2.transpose();
  r.bottomRightCorner(m, m) = R3;
  return r;
}

Mat orthonormal_frame(const InnerProduct& q) {
  const int n = q.dim();
  Eigen::LLT<Mat> llt(q.gram());
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("Cholesky factorization failed");
  Mat linv = llt.matrixL().solve(Mat::Identity(n, n));
  return linv.transpose();
}

Vec mean_curvature(const MetricLieAlgebra& m) { return m.metric.gram().ldlt().solve(trace_form(m.alg)); }

Mat ricci_orthonormal(const LieAlgebra& on) {
  const int n = on.dim();
  Mat ric = Mat::Zero(n, n);
  Vec h(n);
  for (int i = 0; i < n; ++i) {
    const Mat& a = on.ad(i);
    ric += -0.5 * a.transpose() * a + 0.25 * a * a.transpose();
    h(i) = a.trace();
  }
  ric -= 0.5 * killing_form(on);
  ric -= sym(adjoint_matrix(on, h));
  return sym(ric);
}

Mat ricci_in_frame(const MetricLieAlgebra& m, const Mat& frame) {
  return ricci_orthonormal(change_basis(m.alg, frame));
}

Mat ricci_operator(const MetricLieAlgebra& m) { return ricci_in_frame(m, orthonormal_frame(m)); }

Mat ricci_coordinates(const MetricLieAlgebra& m) {
  Mat f = orthonormal_frame(m);
  return f * ricci_in_frame(m, f) * f.inverse();
}

Mat ricci_nilpotent(const MetricLieAlgebra& m) {
  if (!is_nilpotent(m.alg)) throw NotNilpotent("algebra is not nilpotent");
  LieAlgebra on = change_basis(m.alg, orthonormal_frame(m));
  Mat ric = Mat::Zero(on.dim(), on.dim());
  for (const auto& a : on.ads()) ric += -0.5 * a.transpose() * a + 0.25 * a * a.transpose();
  return sym(ric);
}

RicciBlocks ricci_blocks(const MetricLieAlgebra& m, const Subspace& nil) {
  const int n = m.alg.dim();
  if (nil.ambient_dim() != n) throw NilradicalMismatch("subspace lives in the wrong ambient space");
  const Mat& q = m.metric.gram();
  const int l = nil.dim();
  const int mm = n - l;

  Mat e = q_orthonormalize(nil.basis(), q);
  Mat comp = null_space(Mat(nil.basis().transpose() * q), 1e-12 * std::max(1.0, q.norm()));
  if (comp.cols() != mm) throw NilradicalMismatch("could not build the orthogonal complement");
  Mat f = q_orthonormalize(comp, q);
  if (mm > 0) {
    Vec h = mean_curvature(m);
    const double hn = std::sqrt(std::max(0.0, h.dot(q * h)));
    if (hn > 1e-10) {
      Mat rest(n, mm);
      rest.col(0) = h / hn;
      // Remaining f_j: complement of H inside n^perp (in f-coordinates).
      Vec hc = f.transpose() * q * rest.col(0);
      Mat other = orthogonal_complement(hc, mm);
      rest.rightCols(mm - 1) = f * other;
      f = rest;
    }
  }

  RicciBlocks rb;
  rb.l = l;
  rb.m = mm;
  rb.frame.resize(n, n);
  rb.frame << e, f;
  LieAlgebra on = change_basis(m.alg, rb.frame);
  const double tol = 1e-9 * on.tol_scale();
  for (int u = 0; u < n; ++u)
    if (mm > 0 && max_abs(on.ad(u).bottomRows(mm)) > tol)
      throw NilradicalMismatch("subspace is not an ideal containing the derived algebra");
  for (int i = 0; i < l; ++i) {
    rb.D.push_back(on.ad(i).topLeftCorner(l, l));
    rb.C.push_back(on.ad(i).topRightCorner(l, mm));
  }
  for (int j = 0; j < mm; ++j) {
    rb.A.push_back(on.ad(l + j).topLeftCorner(l, l));
    rb.Bm.push_back(on.ad(l + j).topRightCorner(l, mm));
  }
  rb.t = mm > 0 ? rb.A[0].trace() : 0.0;

  Mat ricn = Mat::Zero(l, l);
  for (const auto& d : rb.D) ricn += -0.5 * d.transpose() * d + 0.25 * d * d.transpose();
  rb.R1 = ricn;
  rb.R2 = Mat::Zero(l, mm);
  rb.R3 = Mat::Zero(mm, mm);
  rb.L = Mat(mm, mm);
  for (int i = 0; i < l; ++i) rb.R2 += rb.D[i].transpose() * rb.C[i];
  for (int j = 0; j < mm; ++j) {
    const Mat& a = rb.A[j];
    const Mat& b = rb.Bm[j];
    rb.R1 += 0.5 * (a * a.transpose() - a.transpose() * a) + 0.25 * b * b.transpose();
    rb.R2 += a.transpose() * b;
    rb.R3 += -0.5 * b.transpose() * b;
    for (int k = 0; k < mm; ++k) rb.L(j, k) = (sym(a) * sym(rb.A[k])).trace();
  }
  if (mm > 0) {
    rb.R1 -= rb.t * sym(rb.A[0]);
    rb.R2 += rb.t * rb.Bm[0];
  }
  rb.R2 *= -0.5;
  rb.R3 -= rb.L;
  rb.R1 = sym(rb.R1);
  rb.R3 = sym(rb.R3);
  rb.direct = ricci_orthonormal(on);
  return rb;
}

double scalar_curvature(const MetricLieAlgebra& m) { return ricci_operator(m).trace(); }

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
    case Definiteness::NegativeSemi: return "NegativeSemi";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::PositiveSemi: return "PositiveSemi";
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
  }
  return "?";
}

Vec symmetric_eigenvalues(const Mat& s) {
  if (s.size() == 0) return Vec(0);
  Eigen::SelfAdjointEigenSolver<Mat> es(sym(s), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Definiteness definiteness(const Mat& s, double tol) {
  if (tol < 0) tol = 1e-9 * (1.0 + s.norm());
  Vec ev = symmetric_eigenvalues(s);
  if (ev.size() == 0) return Definiteness::NegativeSemi;
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (hi < -tol) return Definiteness::NegativeDefinite;
  if (lo > tol) return Definiteness::PositiveDefinite;
  if (hi <= tol) return Definiteness::NegativeSemi;
  if (lo >= -tol) return Definiteness::PositiveSemi;
  return Definiteness::Indefinite;
}

}  // namespace solvric

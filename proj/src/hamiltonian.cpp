#include "solvric/hamiltonian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "solvric/errors.hpp"
#include "solvric/triangulate.hpp"

namespace solvric {

namespace {

// Eigenspace of dimension `dim` at theta: the smallest right singular
// vectors of (S - theta).
CMat eigenspace(const Mat& s, cplx theta, int dim) {
  CMat shifted = s.cast<cplx>() - theta * CMat::Identity(s.rows(), s.cols());
  Eigen::JacobiSVD<CMat> svd(shifted, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

Mat real_eigenspace(const Mat& s, double theta, int dim) {
  Mat shifted = s - theta * Mat::Identity(s.rows(), s.cols());
  Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

// Pairs (u, v) with u^T J v = 1, J-orthogonal to each other.
std::vector<std::pair<Vec, Vec>> symplectic_pairs(const Mat& basis, const Mat& j) {
  std::vector<Vec> pool;
  for (int c = 0; c < basis.cols(); ++c) pool.push_back(basis.col(c));
  std::vector<std::pair<Vec, Vec>> out;
  while (pool.size() >= 2) {
    double best = -1.0;
    std::size_t ia = 0, ib = 1;
    for (std::size_t a = 0; a < pool.size(); ++a)
      for (std::size_t b = a + 1; b < pool.size(); ++b) {
        const double w = std::abs(pool[a].dot(j * pool[b]));
        if (w > best + 1e-14) {
          best = w;
          ia = a;
          ib = b;
        }
      }
    if (best <= 1e-12) throw VerificationFailed("symplectic form degenerate on the zero eigenspace");
    Vec u = pool[ia];
    Vec v = pool[ib] / u.dot(j * pool[ib]);
    std::vector<Vec> rest;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (c == ia || c == ib) continue;
      Vec w = pool[c];
      rest.push_back(w - w.dot(j * v) * u + w.dot(j * u) * v);
    }
    out.emplace_back(u, v);
    pool = std::move(rest);
  }
  if (!pool.empty()) throw VerificationFailed("odd-dimensional zero eigenspace");
  return out;
}

}  // namespace

std::string to_string(HamBlockType t) {
  switch (t) {
    case HamBlockType::Rotation: return "rotation";
    case HamBlockType::Hyperbolic: return "hyperbolic";
    case HamBlockType::Quad: return "quad";
  }
  return "?";
}

Mat canonical_symplectic_block(int q) {
  Mat j = Mat::Zero(2 * q, 2 * q);
  j.topRightCorner(q, q) = Mat::Identity(q, q);
  j.bottomLeftCorner(q, q) = -Mat::Identity(q, q);
  return j;
}

Mat standard_symplectic(int p) { return canonical_symplectic_block(p); }

Mat canonical_block(const HamBlock& b) {
  switch (b.type) {
    case HamBlockType::Rotation: {
      Mat g(2, 2);
      g << 0, b.nu, -b.nu, 0;
      return g;
    }
    case HamBlockType::Hyperbolic: {
      Mat g = Mat::Zero(2, 2);
      g(0, 0) = b.mu;
      g(1, 1) = -b.mu;
      return g;
    }
    case HamBlockType::Quad: {
      Mat a(2, 2);
      a << b.mu, b.nu, -b.nu, b.mu;
      Mat g = Mat::Zero(4, 4);
      g.topLeftCorner(2, 2) = a;
      g.bottomRightCorner(2, 2) = -a.transpose();
      return g;
    }
  }
  return Mat();
}

HamiltonianForm hamiltonian_normal_form(const Mat& s, const Mat& j) {
  const int n = static_cast<int>(s.rows());
  if (s.cols() != n || j.rows() != n || j.cols() != n || n % 2 != 0)
    throw DimensionMismatch("Hamiltonian normal form needs even square matrices of equal size");
  const double scale = std::max(1.0, s.norm());
  if ((j * s + s.transpose() * j).norm() > 1e-9 * scale * std::max(1.0, j.norm()))
    throw NotHamiltonian("J S + S^T J does not vanish");
  if (!is_semisimple(s)) throw NotSemisimple("matrix is not diagonalizable");

  const double tol = 1e-7 * scale;
  HamiltonianForm hf;
  std::vector<Mat> cols;
  int accounted = 0;
  for (const auto& c : eigen_clusters(s)) {
    const double re = c.value.real();
    const double im = c.value.imag();
    const int k = c.multiplicity;
    if (std::abs(re) <= tol && std::abs(im) <= tol) {
      for (const auto& [u, v] : symplectic_pairs(real_eigenspace(s, 0.0, k), j)) {
        Mat blk(n, 2);
        blk << u, v;
        cols.push_back(blk);
        hf.blocks.push_back({HamBlockType::Hyperbolic, 0.0, 0.0, 1, 0});
      }
      accounted += k;
    } else if (std::abs(re) <= tol && im > tol) {
      // Krein signature decides the sign of nu.
      const double nu = im;
      CMat w = eigenspace(s, cplx(0.0, nu), k);
      CMat h = (w.adjoint() * j.cast<cplx>() * w) / cplx(0.0, 2.0);
      h = 0.5 * (h + h.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<CMat> es(h);
      for (int a = 0; a < k; ++a) {
        const double d = es.eigenvalues()(a);
        if (std::abs(d) <= 1e-12) throw VerificationFailed("degenerate Krein form");
        CVec z = w * es.eigenvectors().col(a) / std::sqrt(std::abs(d));
        const double sign = d > 0 ? 1.0 : -1.0;
        Mat blk(n, 2);
        blk << z.real(), sign * z.imag();
        cols.push_back(blk);
        hf.blocks.push_back({HamBlockType::Rotation, 0.0, sign * nu, 1, 0});
      }
      accounted += 2 * k;
    } else if (std::abs(im) <= tol && re > tol) {
      Mat x = real_eigenspace(s, re, k);
      Mat y = real_eigenspace(s, -re, k);
      Mat pairing = x.transpose() * j * y;
      Mat yy = y * pairing.inverse();
      for (int a = 0; a < k; ++a) {
        Mat blk(n, 2);
        blk << x.col(a), yy.col(a);
        cols.push_back(blk);
        hf.blocks.push_back({HamBlockType::Hyperbolic, re, 0.0, 1, 0});
      }
      accounted += 2 * k;
    } else if (re > tol && im > tol) {
      CMat z = eigenspace(s, c.value, k);
      CMat w = eigenspace(s, cplx(-re, im), k);
      CMat pairing = z.transpose() * j.cast<cplx>() * w.conjugate();
      CMat wbar = w.conjugate() * pairing.inverse() * cplx(2.0, 0.0);
      for (int a = 0; a < k; ++a) {
        CVec ww = wbar.col(a).conjugate();
        Mat blk(n, 4);
        blk << z.col(a).real(), z.col(a).imag(), ww.real(), ww.imag();
        cols.push_back(blk);
        hf.blocks.push_back({HamBlockType::Quad, re, im, 2, 0});
      }
      accounted += 4 * k;
    }
  }
  if (accounted != n) throw VerificationFailed("eigenvalues do not pair up as a Hamiltonian spectrum");

  hf.symplectic_change.resize(n, n);
  hf.canonical = Mat::Zero(n, n);
  hf.canonical_J = Mat::Zero(n, n);
  int off = 0;
  for (std::size_t b = 0; b < cols.size(); ++b) {
    const int w = static_cast<int>(cols[b].cols());
    hf.symplectic_change.middleCols(off, w) = cols[b];
    hf.blocks[b].offset = off;
    hf.canonical.block(off, off, w, w) = canonical_block(hf.blocks[b]);
    hf.canonical_J.block(off, off, w, w) = canonical_symplectic_block(hf.blocks[b].q);
    off += w;
  }
  const Mat& c = hf.symplectic_change;
  const double jres = (c.transpose() * j * c - hf.canonical_J).cwiseAbs().maxCoeff();
  Eigen::FullPivLU<Mat> lu(c);
  if (!lu.isInvertible()) throw VerificationFailed("canonical basis is singular");
  const double sres = (lu.solve(s * c) - hf.canonical).cwiseAbs().maxCoeff();
  if (jres > 1e-8 * std::max(1.0, c.squaredNorm()) || sres > 1e-7 * scale)
    throw VerificationFailed("canonical form residuals " + std::to_string(jres) + ", " + std::to_string(sres));
  return hf;
}

}  // namespace solvric

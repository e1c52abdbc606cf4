#pragma once

#include <string>
#include <vector>

#include "solvric/lie_algebra.hpp"

namespace solvric {

/// Symmetric positive-definite Gram matrix on the algebra's coordinates.
class InnerProduct {
 public:
  InnerProduct() = default;
  /// Throws NotPositiveDefinite (also for asymmetric input) or
  /// DimensionMismatch.
  explicit InnerProduct(Mat gram);
  static InnerProduct identity(int n) { return InnerProduct(Mat::Identity(n, n)); }

  const Mat& gram() const { return gram_; }
  int dim() const { return static_cast<int>(gram_.rows()); }

 private:
  Mat gram_;
};

struct MetricLieAlgebra {
  MetricLieAlgebra(LieAlgebra a, InnerProduct m);
  LieAlgebra alg;
  InnerProduct metric;
};

/// Pieces of the Ricci matrix in an orthonormal basis adapted to
/// g = n + n^perp, with f_1 along the mean curvature vector.
struct RicciBlocks {
  int l = 0;
  int m = 0;
  Mat frame;  ///< columns e_1..e_l, f_1..f_m in original coordinates
  Mat R1, R2, R3;
  double t = 0.0;
  Mat L;
  std::vector<Mat> A, Bm, C, D;
  Mat direct;  ///< full Ricci matrix computed directly in `frame`

  Mat assembled() const;
};

/// Columns orthonormal for Q: F = L^{-T} where Q = L L^T.
Mat orthonormal_frame(const InnerProduct& q);
inline Mat orthonormal_frame(const MetricLieAlgebra& m) { return orthonormal_frame(m.metric); }

/// H with Q H = (Tr ad_{e_1}, ..., Tr ad_{e_n}), in original coordinates.
Vec mean_curvature(const MetricLieAlgebra& m);

/// Ricci matrix of an algebra whose basis is declared orthonormal.
Mat ricci_orthonormal(const LieAlgebra& on);

/// Ricci matrix in the orthonormal frame returned by orthonormal_frame.
Mat ricci_operator(const MetricLieAlgebra& m);

/// Ricci matrix in a caller-supplied frame that is orthonormal for m.metric.
Mat ricci_in_frame(const MetricLieAlgebra& m, const Mat& frame);

/// Ricci operator as an endomorphism in the original coordinates
/// (F Ric F^{-1}).
Mat ricci_coordinates(const MetricLieAlgebra& m);

/// Nilpotent specialization; throws NotNilpotent.
Mat ricci_nilpotent(const MetricLieAlgebra& m);

/// Throws NilradicalMismatch if `nil` is not a nilpotent ideal containing
/// [g, g].
RicciBlocks ricci_blocks(const MetricLieAlgebra& m, const Subspace& nil);

double scalar_curvature(const MetricLieAlgebra& m);

enum class Definiteness { NegativeDefinite, NegativeSemi, Indefinite, PositiveSemi, PositiveDefinite };

std::string to_string(Definiteness d);

/// Default tolerance (tol < 0) is 1e-9 * (1 + ||S||).
Definiteness definiteness(const Mat& s, double tol = -1.0);

/// Ascending eigenvalues of the symmetric part.
Vec symmetric_eigenvalues(const Mat& s);

}  // namespace solvric

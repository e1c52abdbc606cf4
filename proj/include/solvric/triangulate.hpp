#pragma once

#include <vector>

#include "solvric/linalg.hpp"

namespace solvric {

/// One diagonal block of a real block-triangular form. Forms are stored as
/// their values on the generators, i.e. as covectors over generator
/// coordinates.
struct WeightBlock {
  int size = 1;  ///< 1 or 2
  Vec lambda;    ///< size 1: the weight
  Vec alpha;     ///< size 2: real part
  Vec beta;      ///< size 2: imaginary part, not identically zero
  int offset = 0;  ///< first basis index of the block
};

/// Result of simultaneously block-triangularizing a solvable family.
///
/// In the basis given by the columns of `basis_change`, every generator is
/// block-lower-triangular with diagonal blocks [lambda] or
/// [[alpha, beta], [-beta, alpha]].
struct WeightData {
  Mat basis_change;
  std::vector<WeightBlock> blocks;
  int num_generators = 0;
  /// Set when some eigenpair had an imaginary part within tolerance of zero
  /// and was resolved as two real weights.
  bool borderline = false;

  int dim() const { return static_cast<int>(basis_change.rows()); }
};

struct WeightValue {
  double re = 0.0;
  double im = 0.0;
  int multiplicity = 1;
};

/// Real block-triangularization of the family spanned by `generators`
/// (all k x k). Throws NotSolvableFamily or NoCommonEigenvector.
WeightData real_block_triangularize(const std::vector<Mat>& generators);

/// Eigenvalues of sum_r y_r * generator_r read off the weight forms.
std::vector<WeightValue> weights_of(const WeightData& data, const Vec& y);

/// Evaluate a weight covector at generator coordinates y.
inline double eval_form(const Vec& form, const Vec& y) { return form.size() == 0 ? 0.0 : form.dot(y); }

/// Diagonal D (entry `factor` on the first vector of each 2x2 block, 1
/// elsewhere) such that in the basis basis_change * D no nonzero combination
/// of the generators is skew-symmetric. Falls back to distinct primes when
/// the first choice does not verify. Throws VerificationFailed.
Mat skew_avoiding_scaling(const WeightData& data, const std::vector<Mat>& generators,
                          double factor = 2.0);

/// True iff no nonzero element of span(generators) is skew-symmetric in the
/// basis given by the columns of `basis`.
bool no_skew_elements(const std::vector<Mat>& generators, const Mat& basis);

/// Basis of the matrix Lie algebra generated by the family (vectorized
/// columns).
Mat generated_lie_algebra(const std::vector<Mat>& generators, double abs_tol);

/// Solvability of the matrix Lie algebra generated by the family.
bool is_solvable_family(const std::vector<Mat>& generators, double abs_tol);

/// Real Jordan-Chevalley semisimple part of a real square matrix.
/// Throws NotSemisimple when the generalized eigenspaces cannot be separated.
Mat semisimple_part(const Mat& m);

/// An eigenvalue cluster whose size matches the dimension of the generalized
/// eigenspace at its mean.
struct EigenCluster {
  cplx value;
  int multiplicity = 0;
};

/// Clusters sorted by (Re, Im).
std::vector<EigenCluster> eigen_clusters(const Mat& m);

/// Orthonormal basis of the generalized eigenspace of dimension
/// `multiplicity` at `value`.
CMat generalized_eigenspace(const Mat& m, cplx value, int multiplicity);

/// Every cluster's eigenspace has full dimension (rank test at rel_tol).
bool is_semisimple(const Mat& m, double rel_tol = 1e-7);

}  // namespace solvric

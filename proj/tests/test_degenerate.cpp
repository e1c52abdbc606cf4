#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "generators.hpp"
#include "solvric/catalog.hpp"
#include "solvric/degenerate.hpp"
#include "solvric/errors.hpp"

using namespace solvric;

namespace {

OneParamGroup diag_group(std::initializer_list<double> d) {
  Vec v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double x : d) v(i++) = x;
  return {Mat(v.asDiagonal()), "test"};
}

}  // namespace

TEST_CASE("diagonal flow scales each constant by exp(s (d_i + d_j - d_k))") {
  LieAlgebra f = filiform_algebra(4);  // [X1, X2] = X3, [X1, X3] = X4
  LieAlgebra moved = act_flow(diag_group({1, 1, 3, 5}), 0.5, f);
  for (const auto& c : moved.constants()) {
    const double expect = c.k == 2 ? std::exp(0.5 * (1 + 1 - 3)) : std::exp(0.5 * (1 + 3 - 5));
    CHECK(c.c == doctest::Approx(expect));
  }
}

TEST_CASE("diagonal flow agrees with the general action") {
  gen::Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    LieAlgebra g = gen::random_solvable(rng, 6);
    Vec d = gen::random_matrix(rng, g.dim(), 1);
    OneParamGroup grp{Mat(d.asDiagonal()), "random"};
    LieAlgebra a = act_flow(grp, 0.7, g);
    LieAlgebra b = act(Mat((0.7 * d).array().exp().matrix().asDiagonal()), g);
    for (int i = 0; i < g.dim(); ++i) CHECK((a.ad(i) - b.ad(i)).norm() < 1e-9 * (1 + b.scale()));
    // Non-diagonal generator path: exp(sN) computed by the matrix exponential.
    Mat n = gen::random_matrix(rng, g.dim(), g.dim(), 0.3);
    OneParamGroup full{n, "dense"};
    LieAlgebra c = act_flow(full, 0.5, g);
    LieAlgebra e = act(Mat(Mat(0.5 * n).exp()), g);
    for (int i = 0; i < g.dim(); ++i) CHECK((c.ad(i) - e.ad(i)).norm() < 1e-9 * (1 + e.scale()));
  }
}

TEST_CASE("limits: Heisenberg contracts to abelian, filiform keeps its chain") {
  LimitResult r = limit(heisenberg_algebra(1), diag_group({1, 1, 3}));
  CHECK(r.limit.constants().empty());
  CHECK(r.died.size() == 1);

  LieAlgebra ext = filiform_extension(4, 1.0, 1.0);
  // Add lower-triangular noise to ad_Y through a unipotent change of basis.
  Mat t = Mat::Identity(5, 5);
  t(2, 1) = 0.7;
  t(3, 0) = -0.4;
  LieAlgebra noisy = act(t, ext);
  LimitResult lr = limit(noisy, diag_group({1, 2, 3, 4, 0}));
  // The limit has diagonal ad_Y and the same chain [X1, X_i] = X_{i+1}.
  const Mat& ady = lr.limit.ad(4);
  Mat off = ady;
  off.diagonal().setZero();
  CHECK(off.norm() < 1e-12);
  CHECK(lr.limit.ad(0)(2, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(limit(filiform_algebra(4), diag_group({1, 0, 0, 0})), Diverging);
}

TEST_CASE("group action is contravariant") {
  gen::Rng rng(62);
  LieAlgebra g = gen::random_solvable(rng, 6);
  Mat t1 = gen::random_invertible(rng, g.dim()), t2 = gen::random_invertible(rng, g.dim());
  LieAlgebra a = act(t2, act(t1, g)), b = act(t1 * t2, g);
  for (int i = 0; i < g.dim(); ++i) CHECK((a.ad(i) - b.ad(i)).norm() < 1e-8 * (1 + b.scale()));
}

TEST_CASE("pullback search finds an equivalent metric on the original algebra") {
  // A Ricci-negative metric for the limit pulls back to the noisy algebra.
  LieAlgebra ext = filiform_extension(4, 1.0, 1.0);
  Mat t = Mat::Identity(5, 5);
  t(2, 1) = 3.0;
  t(3, 1) = -2.0;
  LieAlgebra noisy = act(t, ext);
  Vec q(5);
  // A diagonal metric that works on the limit.
  q << 1.0, 1.0, 0.2, 0.02, 1.0;
  OneParamGroup grp = diag_group({1, 2, 3, 4, 0});
  Certificate c = pullback_metric_search(noisy, grp, InnerProduct(Mat(q.asDiagonal())));
  CHECK(c.certified());
  CHECK(verify_certificate(noisy, c));
  // Conditioning limit reached before anything certifies.
  PullbackOptions tight;
  tight.max_condition = 1.0 + 1e-9;
  LieAlgebra flat = heisenberg_algebra(1);
  CHECK_THROWS_AS(pullback_metric_search(flat, diag_group({1, 1, 2}), InnerProduct::identity(3), tight),
                  BudgetExhausted);
}

#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "solvric/catalog.hpp"
#include "solvric/errors.hpp"
#include "solvric/ricci.hpp"

using namespace solvric;

TEST_CASE("h3 with the identity metric") {
  Mat ric = ricci_operator(MetricLieAlgebra(heisenberg_algebra(1), InnerProduct::identity(3)));
  Vec expect(3);
  expect << -0.5, -0.5, 0.5;
  CHECK((ric - Mat(expect.asDiagonal())).norm() < 1e-12);
  CHECK((ric - oracle::ricci(heisenberg_algebra(1), Mat::Identity(3, 3))).norm() < 1e-12);
}

TEST_CASE("hyperbolic algebras are Einstein with constant -(n-1)") {
  for (int n = 2; n <= 6; ++n) {
    LieAlgebra g = diagonal_abelian_extension(Vec::Ones(n - 1));
    Mat ric = ricci_operator(MetricLieAlgebra(g, InnerProduct::identity(n)));
    CHECK((ric + (n - 1.0) * Mat::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("library Ricci matches the brute-force oracle") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    LieAlgebra g = gen::random_solvable(rng, 8);
    InnerProduct q(gen::random_spd(rng, g.dim()));
    Mat ric = ricci_operator(MetricLieAlgebra(g, q));
    Mat ref = oracle::ricci(g, q.gram());
    CHECK((ric - ref).norm() < 1e-9 * (1 + ref.norm()));
  }
}

TEST_CASE("nilpotent specialization agrees with the general formula") {
  gen::Rng rng(32);
  for (LieAlgebra g : {heisenberg_algebra(2), filiform_algebra(5), abelian_algebra(3)}) {
    InnerProduct q(gen::random_spd(rng, g.dim()));
    MetricLieAlgebra m(g, q);
    CHECK((ricci_nilpotent(m) - ricci_operator(m)).norm() < 1e-10 * (1 + ricci_operator(m).norm()));
  }
  CHECK_THROWS_AS(ricci_nilpotent(MetricLieAlgebra(catalog_entry("hyperbolic:3").algebra, InnerProduct::identity(3))),
                  NotNilpotent);
}

TEST_CASE("block assembly equals the direct matrix") {
  gen::Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    LieAlgebra g = gen::random_solvable(rng, 9);
    InnerProduct q(gen::random_spd(rng, g.dim()));
    MetricLieAlgebra m(g, q);
    RicciBlocks rb = ricci_blocks(m, nilradical(g));
    CHECK((rb.assembled() - rb.direct).norm() < 1e-9 * (1 + rb.direct.norm()));
    CHECK((rb.direct - oracle::ricci(g, q.gram(), rb.frame)).norm() < 1e-9 * (1 + rb.direct.norm()));
    // The frame is orthonormal.
    CHECK((rb.frame.transpose() * q.gram() * rb.frame - Mat::Identity(g.dim(), g.dim())).norm() < 1e-9);
  }
}

TEST_CASE("isometry and scaling invariance") {
  gen::Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    LieAlgebra g = gen::random_solvable(rng, 7);
    const int n = g.dim();
    Mat q = gen::random_spd(rng, n);
    Mat t = gen::random_invertible(rng, n);
    // (g, q) and (T.g, T^T q T) are isometric.
    Vec e1 = symmetric_eigenvalues(ricci_operator(MetricLieAlgebra(g, InnerProduct(q))));
    Mat qt = t.transpose() * q * t;
    Vec e2 = symmetric_eigenvalues(
        ricci_operator(MetricLieAlgebra(change_basis(g, t), InnerProduct(0.5 * (qt + qt.transpose())))));
    CHECK((e1 - e2).norm() < 1e-7 * (1 + e1.norm()));
    // Ric(2q) = Ric(q) / 2 as eigenvalues.
    Vec e3 = symmetric_eigenvalues(ricci_operator(MetricLieAlgebra(g, InnerProduct(2.0 * q))));
    CHECK((2.0 * e3 - e1).norm() < 1e-9 * (1 + e1.norm()));
    // Scalar curvature is the trace.
    MetricLieAlgebra m(g, InnerProduct(q));
    CHECK(scalar_curvature(m) == doctest::Approx(e1.sum()).epsilon(1e-9));
  }
}

TEST_CASE("abelian algebras are flat for every metric") {
  gen::Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    Mat ric = ricci_operator(MetricLieAlgebra(abelian_algebra(4), InnerProduct(gen::random_spd(rng, 4))));
    CHECK(ric.norm() < 1e-12);
  }
}

TEST_CASE("inner product validation and definiteness") {
  Mat bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(InnerProduct{bad}, NotPositiveDefinite);
  Mat asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(InnerProduct{asym}, NotPositiveDefinite);
  CHECK_THROWS_AS(MetricLieAlgebra(abelian_algebra(3), InnerProduct::identity(2)), DimensionMismatch);
  CHECK(definiteness(-Mat::Identity(3, 3)) == Definiteness::NegativeDefinite);
  CHECK(definiteness(Mat(Vec::Unit(3, 0).asDiagonal()) * -1.0) == Definiteness::NegativeSemi);
  Vec mixed(2);
  mixed << 1, -1;
  CHECK(definiteness(Mat(mixed.asDiagonal())) == Definiteness::Indefinite);
  CHECK(definiteness(Mat::Identity(2, 2)) == Definiteness::PositiveDefinite);
}

TEST_CASE("mean curvature vector") {
  LieAlgebra g = catalog_entry("hyperbolic:3").algebra;  // [Y, X_i] = X_i, Y last
  Vec h = mean_curvature(MetricLieAlgebra(g, InnerProduct::identity(3)));
  CHECK((h - 2.0 * Vec::Unit(3, 2)).norm() < 1e-12);
}

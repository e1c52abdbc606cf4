#include <doctest.h>

#include "generators.hpp"
#include "solvric/catalog.hpp"
#include "solvric/optimize.hpp"

using namespace solvric;

TEST_CASE("parameterization has unit determinant and round-trips") {
  gen::Rng rng(81);
  for (int n = 1; n <= 6; ++n) {
    Vec x = gen::random_matrix(rng, n * (n + 1) / 2, 1);
    Mat q = gram_from_params(x, n);
    CHECK(q.determinant() == doctest::Approx(1.0).epsilon(1e-9));
    Mat q2 = gram_from_params(params_from_gram(q), n);
    CHECK((q - q2).norm() < 1e-9);
  }
}

TEST_CASE("objective is invariant under scaling of the metric") {
  gen::Rng rng(82);
  LieAlgebra g = gen::random_solvable(rng, 6);
  Mat q = gen::random_spd(rng, g.dim());
  CHECK(normalized_max_ricci(g, q) == doctest::Approx(normalized_max_ricci(g, 2.0 * q)).epsilon(1e-12));
  // Without normalization the eigenvalues scale by exactly 1/2.
  Vec e1 = symmetric_eigenvalues(ricci_operator(MetricLieAlgebra(g, InnerProduct(q))));
  Vec e2 = symmetric_eigenvalues(ricci_operator(MetricLieAlgebra(g, InnerProduct(2.0 * q))));
  CHECK((e1 - 2.0 * e2).norm() <= 1e-12 * (1 + e1.norm()));
}

TEST_CASE("hyperbolic space certifies immediately") {
  OptimizeOptions o;
  o.budget = 2000;
  o.restarts = 4;
  OptimizeResult r = optimize_metric(catalog_entry("hyperbolic:3").algebra, o);
  CHECK(r.certified);
  CHECK(r.restarts_run == 1);
  CHECK(r.best.max_eigenvalue <= -2.0 + 1e-9);
}

TEST_CASE("flat and unimodular algebras never certify") {
  OptimizeOptions o;
  o.budget = 3000;
  o.restarts = 4;
  OptimizeResult r = optimize_metric(abelian_algebra(3), o);
  CHECK_FALSE(r.certified);
  CHECK(std::abs(r.best.max_eigenvalue) < 1e-12);
  CHECK_FALSE(optimize_metric(heisenberg_algebra(1), o).certified);
  CHECK(optimize_metric(heisenberg_algebra(1), o).evaluations <= o.budget);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  OptimizeOptions o;
  o.budget = 1500;
  o.restarts = 3;
  o.seed = 5;
  LieAlgebra g = catalog_entry("heisenberg:1:diag=3,-1").algebra;
  OptimizeResult a = optimize_metric(g, o), b = optimize_metric(g, o);
  CHECK(a.best.max_eigenvalue == b.best.max_eigenvalue);
  CHECK((a.best.metric.gram() - b.best.metric.gram()).norm() == 0.0);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("optimizer certifies catalog Exists entries") {
  for (const char* name : {"heisenberg:1:diag=3,-1", "filiform:4:a=1:d=1", "spiral:1:2"}) {
    OptimizeResult r = optimize_metric(catalog_entry(name).algebra);
    CHECK_MESSAGE(r.certified, name);
  }
}

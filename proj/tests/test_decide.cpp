#include <doctest.h>

#include "generators.hpp"
#include "solvric/catalog.hpp"
#include "solvric/decide.hpp"
#include "solvric/errors.hpp"

using namespace solvric;

namespace {

OverallDecision decide_name(const std::string& name) { return decide(analyze(catalog_entry(name).algebra)); }

}  // namespace

TEST_CASE("simplex solves a small LP") {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
  Mat a(2, 2);
  a << 1, 2, 3, 1;
  Vec b(2), c(2);
  b << 4, 6;
  c << 1, 1;
  LpSolution s = simplex_max(a, b, c);
  CHECK(s.status == LpStatus::Optimal);
  CHECK(s.optimum == doctest::Approx(2.8));
  CHECK(s.x(0) == doctest::Approx(1.6));
}

TEST_CASE("strict feasibility of linear systems") {
  StrictSystem sys;
  sys.m = 2;
  Vec f1(2), f2(2), f3(2);
  f1 << 1, 0;
  f2 << 0, 1;
  sys.forms = {f1, f2};
  DecisionReport r = lp_strict_feasible(sys);
  CHECK(r.verdict == Verdict::Exists);
  CHECK(evaluate(sys, *r.witness) > 0);

  // Zero is interior to the hull of {e1, e2, -e1-e2}.
  f3 << -1, -1;
  sys.forms = {f1, f2, f3};
  CHECK(lp_strict_feasible(sys).verdict == Verdict::NotExists);

  // Boundary: {e1, -e1} alone leaves the e2 direction free but nothing is
  // strictly positive.
  Vec g(2);
  g << -1, 0;
  sys.forms = {f1, g};
  CHECK(lp_strict_feasible(sys).verdict == Verdict::Unknown);
}

TEST_CASE("unimodular algebras are NotExists for every checker") {
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name);
    if (!is_unimodular(e.algebra)) continue;
    Analysis an = analyze(e.algebra);
    CHECK(decide_general_sufficient(an).verdict == Verdict::NotExists);
    CHECK(decide_general_necessary(an).verdict == Verdict::NotExists);
    OverallDecision d = decide(an);
    CHECK(d.verdict == Verdict::NotExists);
    CHECK(d.theorem == theorem::kUnimodular);
  }
}

TEST_CASE("catalog verdicts") {
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_entry(name);
    if (!e.expected) continue;
    CHECK_MESSAGE(decide(analyze(e.algebra)).verdict == *e.expected, name);
  }
}

TEST_CASE("Heisenberg criterion is strictly stronger than the general test") {
  Analysis an = analyze(catalog_entry("heisenberg:1:diag=3,-1").algebra);
  CHECK(decide_general_sufficient(an).verdict != Verdict::Exists);
  DecisionReport r = decide_heisenberg(an, heisenberg_data(an));
  CHECK(r.verdict == Verdict::Exists);
  CHECK(r.theorem == theorem::kHeisenberg);
  REQUIRE(r.witness);
  HeisenbergData hd = heisenberg_data(an);
  CHECK(heisenberg_objective(hd, an.complement.transpose() * *r.witness) > 0);

  OverallDecision d = decide_name("heisenberg:1:diag=5,-3");
  CHECK(d.verdict == Verdict::NotExists);
  CHECK(d.theorem == theorem::kHeisenberg);
}

TEST_CASE("filiform criterion, including the boundary lines") {
  CHECK(decide_name("filiform:4:a=1:d=1").verdict == Verdict::Exists);
  CHECK(decide_name("filiform:4:a=-1:d=3").verdict == Verdict::Exists);
  CHECK(decide_name("filiform:4:a=1:d=-1.5").verdict == Verdict::NotExists);
  // lambda = 2a + d = 0 and iota ~ 2a + 2d = 0 respectively
  CHECK(decide_name("filiform:4:a=1:d=-2").verdict == Verdict::Unknown);
  CHECK(decide_name("filiform:4:a=1:d=-1").verdict == Verdict::Unknown);
  CHECK(decide_name("filiform:4:rank2").verdict == Verdict::Exists);
}

TEST_CASE("other nilradicals report both sub-verdicts") {
  OverallDecision d = decide_name("h3plusR:diag=3,-1,1");
  CHECK(d.nil_class == "Other");
  CHECK(d.verdict == Verdict::Unknown);
  REQUIRE(d.sub.size() == 2);
  CHECK(d.sub[0].first == "necessary");
  CHECK(d.sub[1].first == "sufficient");
  // With every weight positive the sufficient test settles it.
  CHECK(decide_name("h3plusR:diag=1,2,1").verdict == Verdict::Exists);
  // Negative weight on the center: the necessary test rules it out.
  CHECK(decide_name("h3plusR:diag=1,2,-5").verdict == Verdict::NotExists);
}

TEST_CASE("abelian nilradical: verdict agrees with the weights") {
  gen::Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = gen::integer(rng, 1, 5);
    Vec d(k);
    for (int i = 0; i < k; ++i) d(i) = gen::integer(rng, -3, 3) + 0.5;
    LieAlgebra g = act(gen::random_invertible(rng, k + 1), diagonal_abelian_extension(d));
    const bool expect = d.minCoeff() > 0 || d.maxCoeff() < 0;
    OverallDecision dec = decide(analyze(g));
    CHECK(dec.verdict == (expect ? Verdict::Exists : Verdict::NotExists));
  }
}

TEST_CASE("witnesses make every weight positive") {
  gen::Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    LieAlgebra g = gen::random_solvable(rng, 8);
    Analysis an = analyze(g);
    DecisionReport r = decide_general_sufficient(an);
    if (r.verdict != Verdict::Exists) continue;
    Mat ad = adjoint_matrix(g, *r.witness);
    Mat w = an.nil.basis();
    Eigen::EigenSolver<Mat> es(Mat(w.transpose() * ad * w));
    CHECK(es.eigenvalues().real().minCoeff() > 0);
  }
}

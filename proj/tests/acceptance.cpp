// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "solvric/catalog.hpp"
#include "solvric/construct.hpp"
#include "solvric/decide.hpp"
#include "solvric/errors.hpp"
#include "solvric/hamiltonian.hpp"
#include "solvric/optimize.hpp"
#include "solvric/triangulate.hpp"

using namespace solvric;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) o.fail("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_s) + " s");
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), secs,
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double max_entry(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Coefficients of det(x I - A) by Faddeev-LeVerrier.
Vec charpoly(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  Vec c = Vec::Zero(n + 1);
  c(n) = 1.0;
  Mat m = Mat::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c(n - k + 1) * Mat::Identity(n, n);
    c(n - k) = -(a * m).trace() / k;
  }
  return c;
}

/// Coefficients of prod (x - w) over the weight multiset.
Vec poly_from_weights(const std::vector<WeightValue>& ws) {
  std::vector<cplx> c = {cplx(1.0)};
  auto mul = [&](cplx root) {
    std::vector<cplx> next(c.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= root * c[i];
    }
    c = next;
  };
  for (const auto& w : ws) {
    if (w.multiplicity == 2 && w.im != 0.0) {
      mul(cplx(w.re, w.im));
      mul(cplx(w.re, -w.im));
    } else {
      for (int r = 0; r < w.multiplicity; ++r) mul(cplx(w.re, 0.0));
    }
  }
  Vec out(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) out(static_cast<Eigen::Index>(i)) = c[i].real();
  return out;
}

std::vector<std::pair<double, double>> weight_list(const std::vector<WeightValue>& ws) {
  std::vector<std::pair<double, double>> out;
  for (const auto& w : ws)
    for (int r = 0; r < w.multiplicity; ++r) out.emplace_back(w.re, std::abs(w.im));
  std::sort(out.begin(), out.end());
  return out;
}

/// Greedy multiset distance between two weight lists.
double multiset_distance(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](const auto& p, const auto& q) {
      return std::hypot(p.first - x.first, p.second - x.second) < std::hypot(q.first - x.first, q.second - x.second);
    });
    worst = std::max(worst, std::hypot(it->first - x.first, it->second - x.second));
    b.erase(it);
  }
  return worst;
}

std::vector<Mat> random_block_family(gen::Rng& rng, int n, int m) {
  std::vector<int> sizes;
  for (int i = 0; i < n;) {
    const int sz = (i + 1 < n && gen::integer(rng, 0, 2) == 0) ? 2 : 1;
    sizes.push_back(sz);
    i += sz;
  }
  const Mat p = gen::random_invertible(rng, n);
  const Mat pinv = p.inverse();
  std::vector<Mat> fam;
  for (int k = 0; k < m; ++k) {
    Mat a = gen::random_matrix(rng, n, n).triangularView<Eigen::StrictlyLower>();
    int i = 0;
    for (int sz : sizes) {
      const double al = gen::integer(rng, 0, 3) == 0 ? 1.0 : gen::uniform(rng, -2, 2);  // some repeats
      a(i, i) = al;
      if (sz == 2) {
        const double be = gen::uniform(rng, 0.5, 2);
        a(i + 1, i + 1) = al;
        a(i, i + 1) = be;
        a(i + 1, i) = -be;
      }
      i += sz;
    }
    fam.push_back(p * a * pinv);
  }
  return fam;
}

}  // namespace

int main() {
  report(1, "Ricci oracle values", 1.0, [] {
    Outcome o;
    Mat h = ricci_operator(MetricLieAlgebra(heisenberg_algebra(1), InnerProduct::identity(3)));
    Vec e(3);
    e << -0.5, -0.5, 0.5;
    if (max_entry(h - Mat(e.asDiagonal())) > 1e-10) o.fail("h3 differs from diag(-1/2, -1/2, 1/2)");
    if (max_entry(oracle::ricci(heisenberg_algebra(1), Mat::Identity(3, 3)) - Mat(e.asDiagonal())) > 1e-10)
      o.fail("brute-force oracle disagrees on h3");
    for (int n = 2; n <= 6; ++n) {
      LieAlgebra g = diagonal_abelian_extension(Vec::Ones(n - 1));
      Mat r = ricci_operator(MetricLieAlgebra(g, InnerProduct::identity(n)));
      if (max_entry(r + (n - 1.0) * Mat::Identity(n, n)) > 1e-10) o.fail("hyperbolic n=" + std::to_string(n));
      if (max_entry(oracle::ricci(g, Mat::Identity(n, n)) - r) > 1e-10) o.fail("oracle disagrees, n=" + std::to_string(n));
    }
    gen::Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = gen::integer(rng, 1, 6);
      Mat r = ricci_operator(MetricLieAlgebra(abelian_algebra(n), InnerProduct(gen::random_spd(rng, n))));
      if (max_entry(r) > 1e-10) o.fail("abelian Ricci nonzero");
    }
    o.detail = o.pass ? "h3, hyperbolic n=2..6, 50 abelian metrics" : o.detail;
    return o;
  });

  report(2, "block assembly equals direct Ricci", 30.0, [] {
    Outcome o;
    gen::Rng rng(102);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      LieAlgebra g = gen::random_solvable(rng, 10);
      InnerProduct q(gen::random_spd(rng, g.dim()));
      RicciBlocks rb = ricci_blocks(MetricLieAlgebra(g, q), nilradical(g));
      const double err = max_entry(rb.assembled() - rb.direct);
      worst = std::max(worst, err);
      if (err > 1e-9) o.fail("trial " + std::to_string(trial) + " error " + sci(err));
    }
    if (o.pass) o.detail = "200 extensions, worst entry error " + sci(worst);
    return o;
  });

  report(3, "unimodular negative control", 300.0, [] {
    Outcome o;
    gen::Rng rng(103);
    int entries = 0;
    for (const auto& name : catalog_names()) {
      CatalogEntry e = catalog_entry(name);
      if (!is_unimodular(e.algebra)) continue;
      ++entries;
      for (int trial = 0; trial < 100; ++trial) {
        Mat r = ricci_operator(MetricLieAlgebra(e.algebra, InnerProduct(gen::random_spd(rng, e.algebra.dim()))));
        if (definiteness(r) == Definiteness::NegativeDefinite) o.fail(name + ": random metric is Ricci-negative");
      }
      Analysis an = analyze(e.algebra);
      std::vector<DecisionReport> reps = {decide_general_sufficient(an), decide_general_necessary(an),
                                          decide(an).primary};
      if (an.cls.kind == NilKind::Heisenberg && an.rank() > 0) reps.push_back(decide_heisenberg(an, heisenberg_data(an)));
      if (an.cls.kind == NilKind::StandardFiliform && an.rank() > 0) reps.push_back(decide_filiform(an, filiform_data(an)));
      for (const auto& r : reps)
        if (r.verdict != Verdict::NotExists) o.fail(name + ": a checker returned " + to_string(r.verdict));
      OptimizeOptions oo;
      oo.budget = 20000;
      if (optimize_metric(e.algebra, oo).certified) o.fail(name + ": optimizer certified");
    }
    if (entries == 0) o.fail("no unimodular catalog entries");
    if (o.pass) o.detail = std::to_string(entries) + " unimodular entries";
    return o;
  });

  report(4, "Heisenberg iff suite", 120.0, [] {
    Outcome o;
    gen::Rng rng(104);
    std::vector<std::pair<int, Vec>> grid;
    const std::vector<double> v1 = {-3, -2, -1, -0.5, 0.5, 1, 2, 3};
    for (double a : v1)
      for (double b : v1) {
        Vec d(2);
        d << a, b;
        grid.emplace_back(1, d);
      }
    const std::vector<double> v2 = {-2, -1, 1, 3};
    for (double a : v2)
      for (double b : v2)
        for (double c : v2) {
          Vec d(4);
          d << a, b, c, a + c - b;
          grid.emplace_back(2, d);
        }
    int used = 0, exists = 0;
    for (const auto& [p, d] : grid) {
      auto f = [&](double sgn) {
        double v = sgn * (d(0) + d(p));
        for (int i = 0; i < d.size(); ++i) v += std::min(0.0, sgn * d(i));
        return v;
      };
      if (f(1.0) == 0.0 || f(-1.0) == 0.0) continue;  // boundary of the criterion
      const bool expect = f(1.0) > 0 || f(-1.0) > 0;
      LieAlgebra base = heisenberg_extension(p, d);
      LieAlgebra g = act(gen::random_invertible(rng, base.dim()), base);
      Analysis an = analyze(g);
      if (an.cls.kind != NilKind::Heisenberg) {
        o.fail("nilradical not recognized as Heisenberg");
        continue;
      }
      HeisenbergData hd = heisenberg_data(an);
      DecisionReport r = decide_heisenberg(an, hd);
      ++used;
      if (r.verdict != (expect ? Verdict::Exists : Verdict::NotExists)) {
        o.fail("verdict mismatch at p=" + std::to_string(p));
        continue;
      }
      if (expect) {
        ++exists;
        Certificate c = construct_heisenberg(an, hd, *r.witness);
        if (!(c.max_eigenvalue < -1e-9) || !verify_certificate(g, c)) o.fail("construction not certified");
      }
    }
    if (used < 50) o.fail("only " + std::to_string(used) + " grid points");
    if (o.pass) o.detail = std::to_string(used) + " points, " + std::to_string(exists) + " certified constructions";
    return o;
  });

  report(5, "filiform iff suite", 120.0, [] {
    Outcome o;
    gen::Rng rng(105);
    int used = 0, boundary = 0, exists = 0;
    for (int l : {4, 5, 6}) {
      for (double a : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        std::vector<double> ds = {-3.0, -1.0, 1.0, 3.0, -(l - 2) * a, -(l - 2) * a / 2.0};
        for (double d : ds) {
          if (a == 0.0 && d == 0.0) continue;  // zero derivation: nilpotent, no filiform nilradical
          const double lam = (l - 2) * a + d, iota2 = (l - 2) * a + 2 * d;
          const bool on_boundary = lam == 0.0 || iota2 == 0.0;
          LieAlgebra base = filiform_extension(l, a, d);
          LieAlgebra g = act(gen::random_invertible(rng, l + 1), base);
          Analysis an = analyze(g);
          if (an.cls.kind != NilKind::StandardFiliform) {
            o.fail("nilradical not recognized as standard filiform");
            continue;
          }
          FiliformData fd = filiform_data(an);
          DecisionReport r = decide_filiform(an, fd);
          ++used;
          if (on_boundary) {
            ++boundary;
            if (r.verdict != Verdict::Unknown)
              o.fail("boundary point l=" + std::to_string(l) + " a=" + std::to_string(a) + " d=" + std::to_string(d) +
                     " gave " + to_string(r.verdict));
            continue;
          }
          const bool expect = (lam > 0 && iota2 > 0) || (lam < 0 && iota2 < 0);
          if (r.verdict != (expect ? Verdict::Exists : Verdict::NotExists)) {
            o.fail("verdict mismatch l=" + std::to_string(l) + " a=" + std::to_string(a) + " d=" + std::to_string(d));
            continue;
          }
          if (expect) {
            ++exists;
            Certificate c = construct_filiform(an, fd, *r.witness);
            if (!(c.max_eigenvalue < -1e-9) || !verify_certificate(g, c)) o.fail("construction not certified");
          }
        }
      }
    }
    if (o.pass)
      o.detail = std::to_string(used) + " points (" + std::to_string(boundary) + " on the boundary lines), " +
                 std::to_string(exists) + " certified constructions";
    return o;
  });

  report(6, "general sufficient/necessary consistency", 300.0, [] {
    Outcome o;
    gen::Rng rng(106);
    int sufficient = 0, necessary_fail = 0;
    for (int trial = 0; trial < 200 && (sufficient < 20 || necessary_fail < 5); ++trial) {
      const int k = gen::integer(rng, 1, 6);
      const int m = gen::integer(rng, 1, std::min(2, 8 - k));
      auto fam = gen::commuting_family(rng, k, m, true);
      // Half of the samples get a shift that makes Y_1 expanding.
      if (trial % 2 == 0) fam[0] += 2.5 * Mat::Identity(k, k);
      LieAlgebra g;
      try {
        g = act(gen::random_invertible(rng, k + m), make_extension(abelian_algebra(k), fam));
      } catch (const Error&) {
        continue;
      }
      Analysis an = analyze(g);
      if (an.cls.kind != NilKind::Abelian || an.rank() != m) continue;  // weights collapsed
      DecisionReport suf = decide_general_sufficient(an);
      DecisionReport nec = decide_general_necessary(an);
      if (suf.verdict == Verdict::Exists) {
        ++sufficient;
        Certificate c = construct_general(an, *suf.witness);
        if (!verify_certificate(g, c)) o.fail("construct_general did not certify");
      }
      if (nec.verdict == Verdict::NotExists) {
        ++necessary_fail;
        OptimizeOptions oo;
        oo.budget = 20000;
        if (optimize_metric(g, oo).certified) o.fail("optimizer certified a necessary-test failure");
      }
    }
    if (sufficient < 20) o.fail("only " + std::to_string(sufficient) + " sufficient cases");
    if (necessary_fail < 1) o.fail("no necessary-test failures sampled");
    if (o.pass)
      o.detail = std::to_string(sufficient) + " constructions, " + std::to_string(necessary_fail) +
                 " optimizer negative controls";
    return o;
  });

  report(7, "triangularization properties", 30.0, [] {
    Outcome o;
    gen::Rng rng(107);
    double worst_poly = 0.0, worst_inv = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Mat> fam;
      if (trial % 2 == 0) {
        LieAlgebra g = gen::random_solvable(rng, 8);
        fam = g.ads();
      } else {
        fam = random_block_family(rng, gen::integer(rng, 1, 8), gen::integer(rng, 1, 3));
      }
      const int n = static_cast<int>(fam[0].rows());
      const int m = static_cast<int>(fam.size());
      WeightData wd = real_block_triangularize(fam);
      Vec y = gen::random_matrix(rng, m, 1);
      Mat a = Mat::Zero(n, n);
      for (int k = 0; k < m; ++k) a += y(k) * fam[static_cast<std::size_t>(k)];
      const double scale = 1.0 + a.norm();
      // Characteristic polynomial agreement, coefficient c_k scaled by scale^(n-k).
      Vec cp = charpoly(a), cw = poly_from_weights(weights_of(wd, y));
      for (int k = 0; k <= n; ++k) {
        const double err = std::abs(cp(k) - cw(k)) / std::pow(scale, n - k);
        worst_poly = std::max(worst_poly, err);
        if (err > 1e-7) o.fail("characteristic polynomial mismatch, trial " + std::to_string(trial));
      }
      // Basis invariance of the weight multiset.
      Mat t = gen::random_invertible(rng, n);
      Mat tinv = t.inverse();
      std::vector<Mat> moved;
      for (const auto& f : fam) moved.push_back(tinv * f * t);
      WeightData wd2 = real_block_triangularize(moved);
      const double d = multiset_distance(weight_list(weights_of(wd, y)), weight_list(weights_of(wd2, y)));
      worst_inv = std::max(worst_inv, d / scale);
      if (d > 1e-7 * scale) o.fail("weights not basis invariant, trial " + std::to_string(trial));
    }
    if (o.pass)
      o.detail = "100 families, worst polynomial error " + sci(worst_poly) + ", worst weight shift " +
                 sci(worst_inv);
    return o;
  });

  report(8, "Hamiltonian normal form", 30.0, [] {
    Outcome o;
    gen::Rng rng(108);
    for (int trial = 0; trial < 60; ++trial) {
      const int p = gen::integer(rng, 1, 4);
      gen::HamiltonianSample hs = gen::random_hamiltonian(rng, p);
      HamiltonianForm hf = hamiltonian_normal_form(hs.s, hs.j);
      auto key = [](const HamBlock& b) {
        return std::make_tuple(static_cast<int>(b.type), std::abs(b.mu), std::abs(b.nu));
      };
      std::vector<std::tuple<int, double, double>> want, got;
      for (const auto& b : hs.blocks) want.push_back(key(b));
      for (const auto& b : hf.blocks) got.push_back(key(b));
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want.size() != got.size()) {
        o.fail("block count mismatch, trial " + std::to_string(trial));
        continue;
      }
      for (std::size_t i = 0; i < want.size(); ++i) {
        if (std::get<0>(want[i]) != std::get<0>(got[i]) ||
            std::abs(std::get<1>(want[i]) - std::get<1>(got[i])) > 1e-7 ||
            std::abs(std::get<2>(want[i]) - std::get<2>(got[i])) > 1e-7)
          o.fail("block parameters differ, trial " + std::to_string(trial));
      }
      const Mat& c = hf.symplectic_change;
      if (max_entry(c.transpose() * hs.j * c - hf.canonical_J) > 1e-7) o.fail("change is not symplectic");
      if (max_entry(c.inverse() * hs.s * c - hf.canonical) > 1e-7 * (1 + hs.s.norm())) o.fail("canonical form mismatch");
    }
    if (o.pass) o.detail = "60 random Hamiltonian matrices, 2p <= 8";
    return o;
  });

  return failures;
}

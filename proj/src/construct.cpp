#include "solvric/construct.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "solvric/errors.hpp"
#include "solvric/hamiltonian.hpp"
#include "solvric/triangulate.hpp"

namespace solvric {

namespace {

double trace_of(const LieAlgebra& g, const Vec& v) { return adjoint_matrix(g, v).trace(); }

/// Columns Y_1 = witness, Y_2..Y_m spanning the rest of the complement with
/// trace ad_{Y_k} = 0, so that the mean curvature vector is along Y_1.
Mat complement_vectors(const Analysis& an, const Vec& witness) {
  const Mat& c = an.complement;
  const int m = an.rank();
  Vec y = c.transpose() * witness;
  if (y.norm() <= 1e-12 * (1.0 + witness.norm())) throw PreconditionFailed("witness lies in the nilradical");
  Mat out(an.g.dim(), m);
  out.col(0) = c * y;
  const double t1 = trace_of(an.g, out.col(0));
  if (!(t1 > 0)) throw PreconditionFailed("witness has nonpositive trace");
  Mat rest = orthogonal_complement(Mat(y), m);
  for (int k = 1; k < m; ++k) {
    Vec v = c * rest.col(k - 1);
    out.col(k) = v - (trace_of(an.g, v) / t1) * out.col(0);
  }
  return out;
}

LieAlgebra cleaned(const LieAlgebra& alg, double tol) {
  std::vector<StructureConstant> keep;
  for (const auto& c : alg.constants())
    if (std::abs(c.c) > tol) keep.push_back(c);
  return LieAlgebra::unchecked(alg.dim(), keep, alg.labels());
}

Mat diagonal_generator(const std::vector<double>& d) {
  Mat n = Mat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return n;
}

bool negative_on_limit(const LieAlgebra& lim, const Mat& q) {
  try {
    MetricLieAlgebra ml(lim, InnerProduct(q));
    return definiteness(ricci_operator(ml)) == Definiteness::NegativeDefinite;
  } catch (const Error&) {
    return false;
  }
}

/// Certificate on g for the metric whose Gram matrix in the basis F is q.
Certificate transport(const LieAlgebra& g, const Mat& f, const Certificate& on_f, const std::string& provenance) {
  Mat finv = f.inverse();
  Mat q = finv.transpose() * on_f.metric.gram() * finv;
  Certificate c = make_certificate(g, InnerProduct(0.5 * (q + q.transpose())), provenance);
  c.s = on_f.s;
  return c;
}

/// Pull `q` back from the limit of F.mu along exp(sN) and move it to g.
std::optional<Certificate> pull_and_transport(const LieAlgebra& g, const Mat& f, const LieAlgebra& galg,
                                              const OneParamGroup& grp, const Mat& q, const ConstructOptions& opt,
                                              const std::string& provenance) {
  try {
    Certificate on_f = pullback_metric_search(galg, grp, InnerProduct(q), opt.pullback, provenance);
    Certificate c = transport(g, f, on_f, provenance);
    if (c.certified()) return c;
  } catch (const BudgetExhausted&) {
  }
  return std::nullopt;
}

std::optional<Certificate> optimizer_fallback(const LieAlgebra& g, const Mat& start, const ConstructOptions& opt,
                                              const std::string& provenance) {
  OptimizeOptions o = opt.fallback;
  o.initial = start;
  OptimizeResult r = optimize_metric(g, o);
  if (!r.certified) return std::nullopt;
  r.best.provenance = provenance;
  return r.best;
}

}  // namespace

std::vector<double> degeneration_exponents(const LieAlgebra& adapted, const std::vector<int>& block_of, int l) {
  int nblocks = 0;
  for (int i = 0; i < l; ++i) nblocks = std::max(nblocks, block_of[static_cast<std::size_t>(i)] + 1);
  // lower[c] = every exponent d_c must be >= lower[c]
  std::vector<std::vector<std::pair<int, int>>> sums(static_cast<std::size_t>(nblocks));
  std::vector<std::vector<int>> singles(static_cast<std::size_t>(nblocks));
  const double tol = 1e-9 * adapted.tol_scale();
  auto blk = [&](int i) { return block_of[static_cast<std::size_t>(i)]; };
  for (const auto& c : adapted.constants()) {
    if (std::abs(c.c) <= tol) continue;
    if (c.k >= l) throw VerificationFailed("bracket leaves the nilradical");
    const int bk = blk(c.k);
    if (c.i < l && c.j < l) {
      if (bk <= std::max(blk(c.i), blk(c.j))) throw VerificationFailed("nilradical basis is not triangular");
      sums[static_cast<std::size_t>(bk)].push_back({blk(c.i), blk(c.j)});
    } else if (c.i < l || c.j < l) {
      const int bx = blk(c.i < l ? c.i : c.j);
      if (bk < bx) throw VerificationFailed("complement action is not triangular");
      if (bk > bx) singles[static_cast<std::size_t>(bk)].push_back(bx);
    }
  }
  std::vector<double> d(static_cast<std::size_t>(nblocks), 1.0);
  for (int b = 0; b < nblocks; ++b) {
    double need = 1.0;
    for (auto [x, y] : sums[static_cast<std::size_t>(b)])
      need = std::max(need, d[static_cast<std::size_t>(x)] + d[static_cast<std::size_t>(y)] + 1.0);
    for (int x : singles[static_cast<std::size_t>(b)]) need = std::max(need, d[static_cast<std::size_t>(x)] + 1.0);
    d[static_cast<std::size_t>(b)] = need;
  }
  std::vector<double> out(static_cast<std::size_t>(adapted.dim()), 0.0);
  for (int i = 0; i < l; ++i) out[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(blk(i))];
  return out;
}

Certificate construct_general(const Analysis& an, const Vec& witness, const ConstructOptions& opt) {
  const LieAlgebra& g = an.g;
  const int n = g.dim();
  const int l = an.nil.dim();
  const int m = an.rank();
  if (m == 0) throw PreconditionFailed("algebra is nilpotent");
  const Mat& w = an.nil.basis();
  std::vector<Mat> gens;
  for (int u = 0; u < n; ++u) gens.push_back(w.transpose() * g.ad(u) * w);
  WeightData wd = real_block_triangularize(gens);
  std::vector<int> block_of(static_cast<std::size_t>(l), 0);
  for (std::size_t b = 0; b < wd.blocks.size(); ++b)
    for (int r = 0; r < wd.blocks[b].size; ++r) block_of[static_cast<std::size_t>(wd.blocks[b].offset + r)] = static_cast<int>(b);
  const Mat ys = complement_vectors(an, witness);

  // The factor breaks the rotation symmetry of 2x2 blocks so that no
  // nonzero combination of the limit's A_j is skew.
  for (double factor : {1.1, 1.3, 2.0, 1.02}) {
    Mat dscale = Mat::Identity(l, l);
    for (const auto& b : wd.blocks)
      if (b.size == 2) dscale(b.offset, b.offset) = factor;
    Mat f(n, n);
    f << w * wd.basis_change * dscale, ys;
    LieAlgebra galg = change_basis(g, f);
    OneParamGroup grp{diagonal_generator(degeneration_exponents(galg, block_of, l)), "block exponents on n"};
    LieAlgebra lim = limit(cleaned(galg, 1e-9 * galg.tol_scale()), grp).limit;
    const Mat q = Mat::Identity(n, n);
    if (!negative_on_limit(lim, q)) continue;
    if (auto c = pull_and_transport(g, f, galg, grp, q, opt, theorem::kGeneralSufficient)) return *c;
  }
  throw BudgetExhausted("general construction: no scaling produced a certified metric");
}

Certificate construct_heisenberg(const Analysis& an, const HeisenbergData& hd, const Vec& witness,
                                 const ConstructOptions& opt) {
  const LieAlgebra& g = an.g;
  const int n = g.dim();
  const int p = hd.p;
  const int m = hd.m;
  const int zi = 2 * p;
  if (m == 0) throw PreconditionFailed("algebra is nilpotent");
  const Mat x = hd.basis.leftCols(2 * p);
  const Vec z = hd.basis.col(zi);
  Mat ys = complement_vectors(an, witness);

  // Shift each Y_k by an element of n so that ad_{Y_k} maps span(X) into
  // span(X): the Z-components v satisfy v + J^T c = 0.
  auto basis_with = [&](const Mat& xs, const Mat& yv) {
    Mat b(n, n);
    b << xs, z, yv;
    return b;
  };
  {
    LieAlgebra a0 = change_basis(g, basis_with(x, ys));
    for (int k = 0; k < m; ++k) {
      Vec v = a0.ad(zi + 1 + k).row(zi).head(2 * p).transpose();
      Vec c = -hd.J * v;
      ys.col(k) += x * c;
    }
  }
  LieAlgebra a0 = change_basis(g, basis_with(x, ys));
  const Mat n1 = a0.ad(zi + 1).topLeftCorner(2 * p, 2 * p);
  const double lam = a0.ad(zi + 1)(zi, zi);
  if (!(lam > 0)) throw PreconditionFailed("lambda(Y) must be positive");
  std::vector<double> expo(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < 2 * p; ++i) expo[static_cast<std::size_t>(i)] = 1.0;
  expo[static_cast<std::size_t>(zi)] = 2.0;
  OneParamGroup grp{diagonal_generator(expo), "X -> e^s X, Z -> e^{2s} Z"};

  const Mat s_part = n1 - 0.5 * lam * Mat::Identity(2 * p, 2 * p);
  if (!is_semisimple(s_part)) {
    // The semisimple-part substitution has no explicit one-parameter group
    // here; start the optimizer from the pulled-back product metric.
    Mat f = basis_with(x, ys);
    Mat t = Mat(grp.generator.diagonal().array().exp().matrix().asDiagonal()).inverse();
    Mat finv = f.inverse();
    Mat start = finv.transpose() * t.transpose() * t * finv;
    if (auto c = optimizer_fallback(g, 0.5 * (start + start.transpose()), opt, "heisenberg-nilradical/optimizer"))
      return *c;
    throw BudgetExhausted("non-semisimple N_Y and the optimizer did not certify");
  }

  HamiltonianForm hf = hamiltonian_normal_form(s_part, hd.J);
  const Mat f = basis_with(x * hf.symplectic_change, ys);
  LieAlgebra galg = change_basis(g, f);
  LieAlgebra lim = limit(cleaned(galg, 1e-9 * galg.tol_scale()), grp).limit;

  // Block scales: a_i^{-2} is the squared bracket constant on block i.
  double big = 0.0, small_q = 0.0, total_q = 0.0;
  for (const auto& b : hf.blocks) {
    const double mu = std::abs(b.mu);
    total_q += b.q;
    if (b.type != HamBlockType::Rotation && mu > 0.5 * lam)
      big += b.q * (mu - 0.5 * lam);
    else
      small_q += b.q;
  }
  if (!(lam - big > 0)) throw PreconditionFailed("Heisenberg objective is not positive at the witness");
  const double pp1 = p + 1.0;
  const double kappa = big > 0 ? std::min(1.05, 1.0 + 0.5 * (lam / big - 1.0)) : 1.05;
  double delta = 1e-3 * pp1 * lam * lam / total_q;
  if (small_q > 0) delta = std::min(delta, pp1 * lam * (lam - kappa * big) / small_q);

  Mat qskew = Mat::Identity(2 * p, 2 * p);
  if (m >= 2) {
    try {
      std::vector<Mat> fam;
      for (int k = 0; k < m; ++k) fam.push_back(lim.ad(zi + 1 + k).topLeftCorner(2 * p, 2 * p));
      WeightData wd = real_block_triangularize(fam);
      Mat ds = Mat::Identity(2 * p, 2 * p);
      for (const auto& b : wd.blocks)
        if (b.size == 2) ds(b.offset, b.offset) = 2.0;
      Mat gi = (wd.basis_change * ds).inverse();
      qskew = gi.transpose() * gi;
    } catch (const Error&) {
    }
  }
  const std::vector<double> epsilons = m >= 2 ? std::vector<double>{0.3, 0.1, 0.03, 0.01} : std::vector<double>{1.0};
  const std::vector<double> etas = m >= 2 ? std::vector<double>{0.0, 0.1, 0.3, 0.03} : std::vector<double>{0.0};
  for (int shrink = 0; shrink < 6; ++shrink, delta /= 10.0) {
    Mat qm = Mat::Zero(2 * p, 2 * p);
    for (const auto& b : hf.blocks) {
      const double mu = std::abs(b.mu);
      const bool is_big = b.type != HamBlockType::Rotation && mu > 0.5 * lam;
      const double a_inv2 = is_big ? kappa * 2.0 * pp1 * lam * (mu - 0.5 * lam) : delta;
      qm.block(b.offset, b.offset, 2 * b.q, 2 * b.q) = Mat::Identity(2 * b.q, 2 * b.q) / std::sqrt(a_inv2);
    }
    const Mat qs = qskew * (qm.trace() / qskew.trace());
    for (double eps : epsilons) {
      for (double eta : etas) {
        Mat q = Mat::Zero(n, n);
        q.topLeftCorner(2 * p, 2 * p) = qm + eta * qs;
        q(zi, zi) = 1.0;
        q(zi + 1, zi + 1) = 1.0;
        for (int k = 1; k < m; ++k) q(zi + 1 + k, zi + 1 + k) = 1.0 / (eps * eps);
        if (!negative_on_limit(lim, q)) continue;
        if (auto c = pull_and_transport(g, f, galg, grp, q, opt, theorem::kHeisenberg)) return *c;
      }
    }
  }
  throw BudgetExhausted("Heisenberg construction: no parameter choice produced a certified metric");
}

Vec filiform_hull_coefficients(int l, double a, double d) {
  if (l < 3) throw InvalidInput("filiform length must be at least 3");
  Vec c(l);
  for (int i = 1; i <= l - 2; ++i) {
    double s = 0.0;
    for (int j = i; j <= l - 2; ++j) s += j;
    c(i - 1) = a * s + d * (l - 1 - i);
  }
  const double L = l;
  c(l - 2) = a * ((L - 2) * (L - 1) * (2 * L - 3) / 6.0 + 1.0) + d * 0.5 * (L - 2) * (L - 1);
  c(l - 1) = a * 0.5 * (L - 2) * (L - 1) + d * (L - 1);
  return c;
}

FiliformRecipe filiform_recipe(int l, double a, double d, double t) {
  FiliformRecipe r;
  r.hull = filiform_hull_coefficients(l, a, d);
  const Vec& c = r.hull;
  if (c.minCoeff() <= 0) throw HullCoefficientNonpositive("convex-hull coefficients are not all positive");
  // delta_i = eta (l-1-i) keeps the remainder in the open positive octant.
  double sum_w = 0.0;
  double eta = c(l - 1) / (l - 2);
  for (int i = 1; i <= l - 2; ++i) {
    sum_w += l - 1 - i;
    eta = std::min(eta, c(i - 1) / (l - 1 - i));
  }
  r.eta = 0.5 * std::min(eta, c(l - 2) / sum_w);
  r.xi = Vec::Zero(l + 1);
  for (int i = 1; i <= l - 2; ++i) r.xi(i + 1) = t * (c(i - 1) - r.eta * (l - 1 - i));
  r.scale = Vec::Ones(l + 1);
  for (int i = 2; i <= l - 1; ++i) r.scale(i + 1) = r.scale(1) * r.scale(i) / std::sqrt(2.0 * r.xi(i));
  r.gram = Mat::Zero(l, l);
  for (int i = 1; i <= l; ++i) r.gram(i - 1, i - 1) = 1.0 / (r.scale(i) * r.scale(i));
  return r;
}

namespace {

// Eigenvector of the lower-triangular d for eigenvalue mu with v(lead) = 1
// and zeros above; nullopt at a resonance with nonzero right-hand side.
std::optional<Vec> triangular_eigenvector(const Mat& d, double mu, int lead, double tol) {
  const int l = static_cast<int>(d.rows());
  Vec v = Vec::Zero(l);
  v(lead) = 1.0;
  for (int i = lead + 1; i < l; ++i) {
    const double rhs = -d.row(i).segment(lead, i - lead).dot(v.segment(lead, i - lead));
    const double piv = d(i, i) - mu;
    if (std::abs(piv) > tol) {
      v(i) = rhs / piv;
    } else if (std::abs(rhs) > tol) {
      return std::nullopt;
    }
  }
  return v;
}

// Re-adapts the chain so that ad_Y is diagonal: X_1, X_2 eigenvectors and
// X_{i+1} = [X_1, X_i]. Nilradical coordinates of the new basis, or nullopt
// when ad_Y is not semisimple on the nilradical.
std::optional<Mat> diagonalizing_chain(const LieAlgebra& galg, int l) {
  const Mat dy = galg.ad(l).topLeftCorner(l, l);
  const double tol = 1e-9 * std::max(1.0, dy.norm());
  auto x1 = triangular_eigenvector(dy, dy(0, 0), 0, tol);
  auto x2 = triangular_eigenvector(dy, dy(1, 1), 1, tol);
  if (!x1 || !x2) return std::nullopt;
  Mat b(l, l);
  b.col(0) = *x1;
  b.col(1) = *x2;
  const Mat ad1 = adjoint_matrix(galg, Vec((Vec(galg.dim()) << *x1, Vec::Zero(galg.dim() - l)).finished()));
  for (int i = 2; i < l; ++i) b.col(i) = ad1.topLeftCorner(l, l) * b.col(i - 1);
  if (Eigen::FullPivLU<Mat>(b).rank() < l) return std::nullopt;
  return b;
}

}  // namespace

Certificate construct_filiform(const Analysis& an, const FiliformData& fd, const Vec& witness,
                               const ConstructOptions& opt) {
  const LieAlgebra& g = an.g;
  const int n = g.dim();
  const int l = fd.l;
  if (fd.m == 2) {
    // Pick Y with a(Y) = d(Y) = 1: every weight is then positive.
    LieAlgebra moved = change_basis(g, fd.basis);
    Mat ad2(2, 2);
    for (int k = 0; k < 2; ++k) {
      ad2(0, k) = moved.ad(l + k)(0, 0);
      ad2(1, k) = moved.ad(l + k)(1, 1);
    }
    Vec y = ad2.fullPivLu().solve(Vec::Ones(2));
    if ((ad2 * y - Vec::Ones(2)).norm() > 1e-8) throw VerificationFailed("rank-two diagonal system is singular");
    return construct_general(an, fd.basis.rightCols(2) * y, opt);
  }
  if (fd.m != 1) throw PreconditionFailed("filiform construction needs rank one or two");
  Mat f(n, n);
  f << fd.basis.leftCols(l), an.complement * (an.complement.transpose() * witness);
  LieAlgebra galg = change_basis(g, f);
  // Off-diagonal parts of ad_Y only decay like e^{-s}; remove them exactly
  // when possible so the pullback stays well conditioned. First Y -> Y + c X_k
  // clears the X_{k+1} part of [Y, X_1], since [X_k, X_1] = -X_{k+1}.
  {
    const Mat dy = galg.ad(l);
    for (int i = 2; i < l; ++i) f.col(l) += dy(i, 0) * f.col(i - 1);
    galg = change_basis(g, f);
  }
  if (auto b = diagonalizing_chain(galg, l)) {
    f.leftCols(l) = f.leftCols(l) * *b;
    galg = change_basis(g, f);
  }
  const Mat ay = galg.ad(l).topLeftCorner(l, l);
  const double a = ay(0, 0), d = ay(1, 1), t = ay.trace();
  if (!(t > 0)) throw PreconditionFailed("witness has nonpositive trace");
  const FiliformRecipe rec = filiform_recipe(l, a, d, t);
  Mat q = Mat::Zero(n, n);
  q.topLeftCorner(l, l) = rec.gram;
  q(l, l) = 1.0;
  std::vector<double> expo(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < l; ++i) expo[static_cast<std::size_t>(i)] = i + 1.0;
  OneParamGroup grp{diagonal_generator(expo), "X_i -> e^{is} X_i"};
  LieAlgebra lim = limit(cleaned(galg, 1e-9 * galg.tol_scale()), grp).limit;
  if (!negative_on_limit(lim, q)) throw VerificationFailed("filiform limit metric is not Ricci-negative");
  if (auto cert = pull_and_transport(g, f, galg, grp, q, opt, theorem::kFiliform)) return *cert;
  // A nilpotent part of ad_Y that no basis change removes decays only like
  // e^{-s}; start the optimizer from the pullback at the largest s the
  // conditioning limit allows.
  const double s_c = std::min(opt.pullback.s_max, 0.45 * std::log(opt.pullback.max_condition) / (l - 1));
  Vec tinv_diag(n);
  for (int i = 0; i < n; ++i) tinv_diag(i) = std::exp(-s_c * expo[static_cast<std::size_t>(i)]);
  const Mat finv = f.inverse();
  const Mat start = finv.transpose() * tinv_diag.asDiagonal() * q * tinv_diag.asDiagonal() * finv;
  if (auto c = optimizer_fallback(g, 0.5 * (start + start.transpose()), opt, "filiform-nilradical/optimizer"))
    return *c;
  throw BudgetExhausted("filiform construction: pullback and optimizer did not certify");
}

Certificate construct_metric(const Analysis& an, const OverallDecision& dec, const ConstructOptions& opt) {
  if (dec.verdict != Verdict::Exists || !dec.primary.witness)
    throw PreconditionFailed("no Ricci-negative metric is known to exist (" + to_string(dec.verdict) + ")");
  const Vec& w = *dec.primary.witness;
  switch (an.cls.kind) {
    case NilKind::Heisenberg:
      return construct_heisenberg(an, heisenberg_data(an), w, opt);
    case NilKind::StandardFiliform:
      return construct_filiform(an, filiform_data(an), w, opt);
    case NilKind::Abelian:
    case NilKind::Other:
      break;
  }
  return construct_general(an, w, opt);
}

}  // namespace solvric

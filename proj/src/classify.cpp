#include "solvric/classify.hpp"

#include <cmath>

#include "solvric/errors.hpp"

namespace solvric {

namespace {

double structure_residual(const LieAlgebra& alg, const Mat& basis, const std::vector<StructureConstant>& expected) {
  LieAlgebra moved = change_basis(alg, basis);
  LieAlgebra model = LieAlgebra::unchecked(alg.dim(), expected);
  double worst = 0.0;
  for (int i = 0; i < alg.dim(); ++i) worst = std::max(worst, max_abs(moved.ad(i) - model.ad(i)));
  return worst;
}

std::optional<Mat> darboux_basis(const LieAlgebra& nil, std::string& diag) {
  const int n = nil.dim();
  if (n < 3 || n % 2 == 0) return std::nullopt;
  const int p = (n - 1) / 2;
  Subspace z = center(nil);
  if (z.dim() != 1) {
    diag = "center has dimension " + std::to_string(z.dim());
    return std::nullopt;
  }
  Subspace derived = bracket_span(nil, Subspace::whole(n), Subspace::whole(n));
  if (derived.dim() != 1 || !z.contains(derived, 1e-8)) {
    diag = "derived algebra is not the center";
    return std::nullopt;
  }
  Vec zv = z.basis().col(0);
  Mat comp = orthogonal_complement(z.basis(), n);
  std::vector<Vec> pool;
  for (int c = 0; c < comp.cols(); ++c) pool.push_back(comp.col(c));
  auto omega = [&](const Vec& u, const Vec& v) { return zv.dot(bracket(nil, u, v)); };

  std::vector<Vec> xa, xb;
  while (!pool.empty()) {
    double best = 0.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t a = 0; a < pool.size(); ++a)
      for (std::size_t b = a + 1; b < pool.size(); ++b) {
        const double w = std::abs(omega(pool[a], pool[b]));
        if (w > best + 1e-14) {
          best = w;
          ia = a;
          ib = b;
        }
      }
    if (best <= 1e-9 * nil.tol_scale()) {
      diag = "bracket pairing on n/z is degenerate";
      return std::nullopt;
    }
    Vec u = pool[ia];
    Vec v = pool[ib] / omega(pool[ia], pool[ib]);
    std::vector<Vec> rest;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (c == ia || c == ib) continue;
      Vec w = pool[c];
      const double wu = omega(w, u);
      const double wv = omega(w, v);
      rest.push_back(w - wv * u + wu * v);
    }
    xa.push_back(u);
    xb.push_back(v);
    pool = std::move(rest);
  }
  Mat basis(n, n);
  for (int i = 0; i < p; ++i) {
    basis.col(i) = xa[static_cast<std::size_t>(i)];
    basis.col(p + i) = xb[static_cast<std::size_t>(i)];
  }
  basis.col(2 * p) = zv;
  std::vector<StructureConstant> model;
  for (int i = 0; i < p; ++i) model.push_back({i, p + i, 2 * p, 1.0});
  const double res = structure_residual(nil, basis, model);
  if (res > 1e-8 * nil.tol_scale()) {
    diag = "Darboux basis residual " + std::to_string(res);
    return std::nullopt;
  }
  return basis;
}

std::optional<Mat> filiform_chain(const LieAlgebra& nil, std::string& diag) {
  const int l = nil.dim();
  if (l < 4) return std::nullopt;
  auto lcs = lower_central_series(nil);
  bool pattern = static_cast<int>(lcs.size()) == l;
  if (pattern) {
    if (lcs[1].dim() != l - 2) pattern = false;
    for (int k = 1; k < l && pattern; ++k)
      if (lcs[static_cast<std::size_t>(k)].dim() != l - 1 - k) pattern = false;
  }
  if (!pattern) {
    diag = "lower central series is not of maximal length";
    return std::nullopt;
  }
  const Subspace& c1 = lcs[1];
  Mat stacked(l * c1.dim(), l);
  for (int j = 0; j < c1.dim(); ++j) stacked.block(j * l, 0, l, l) = adjoint_matrix(nil, Vec(c1.basis().col(j)));
  Subspace ideal(l, null_space(stacked, 1e-9 * nil.tol_scale()));
  if (ideal.dim() != l - 1) {
    diag = "centralizer of [n,n] has dimension " + std::to_string(ideal.dim());
    return std::nullopt;
  }
  if (bracket_span(nil, ideal, ideal).dim() != 0) {
    diag = "centralizer of [n,n] is not abelian";
    return std::nullopt;
  }
  if (!ideal.contains(c1, 1e-8)) {
    diag = "[n,n] is not inside its centralizer";
    return std::nullopt;
  }
  Mat basis(l, l);
  basis.col(0) = orthogonal_complement(ideal.basis(), l).col(0);
  Mat inside = null_space(Mat(c1.basis().transpose() * ideal.basis()), 1e-9);
  if (inside.cols() != 1) {
    diag = "no cyclic vector in the ideal";
    return std::nullopt;
  }
  basis.col(1) = ideal.basis() * inside.col(0);
  Mat ad1 = adjoint_matrix(nil, Vec(basis.col(0)));
  for (int i = 2; i < l; ++i) basis.col(i) = ad1 * basis.col(i - 1);
  if (numeric_rank(basis, 1e-9) < l) {
    diag = "chain basis is degenerate";
    return std::nullopt;
  }
  std::vector<StructureConstant> model;
  for (int i = 1; i < l - 1; ++i) model.push_back({0, i, i + 1, 1.0});
  const double res = structure_residual(nil, basis, model);
  if (res > 1e-8 * nil.tol_scale()) {
    diag = "chain basis residual " + std::to_string(res);
    return std::nullopt;
  }
  return basis;
}

}  // namespace

std::string describe(const NilradicalClass& c) {
  switch (c.kind) {
    case NilKind::Abelian: return "Abelian(" + std::to_string(c.adapted_basis.cols()) + ")";
    case NilKind::Heisenberg: return "Heisenberg(" + std::to_string(c.p) + ")";
    case NilKind::StandardFiliform: return "StandardFiliform(" + std::to_string(c.l) + ")";
    case NilKind::Other: return "Other";
  }
  return "Other";
}

NilradicalClass classify_nilradical(const LieAlgebra& nil) {
  if (!is_nilpotent(nil)) throw NotNilpotent("classify_nilradical needs a nilpotent algebra");
  const int n = nil.dim();
  NilradicalClass c;
  if (nil.scale() <= 1e-12 || bracket_span(nil, Subspace::whole(n), Subspace::whole(n)).dim() == 0) {
    c.kind = NilKind::Abelian;
    c.adapted_basis = Mat::Identity(n, n);
    return c;
  }
  std::string diag_h, diag_f;
  if (auto b = darboux_basis(nil, diag_h)) {
    c.kind = NilKind::Heisenberg;
    c.p = (n - 1) / 2;
    c.adapted_basis = *b;
    return c;
  }
  if (auto b = filiform_chain(nil, diag_f)) {
    c.kind = NilKind::StandardFiliform;
    c.l = n;
    c.adapted_basis = *b;
    return c;
  }
  c.kind = NilKind::Other;
  c.diagnostics = "not Heisenberg";
  if (!diag_h.empty()) c.diagnostics += " (" + diag_h + ")";
  c.diagnostics += "; not standard filiform";
  if (!diag_f.empty()) c.diagnostics += " (" + diag_f + ")";
  return c;
}

Analysis analyze(const LieAlgebra& g) {
  Analysis an;
  an.g = g;
  an.nil = nilradical(g);
  an.nil_alg = restrict_to(g, an.nil);
  an.cls = classify_nilradical(an.nil_alg);
  an.complement = orthogonal_complement(an.nil.basis(), g.dim());
  if (an.nil.dim() == 0) an.complement = Mat::Identity(g.dim(), g.dim());
  return an;
}

HeisenbergData heisenberg_data(const Analysis& an) {
  if (an.cls.kind != NilKind::Heisenberg) throw NilradicalMismatch("nilradical is not Heisenberg");
  const int p = an.cls.p;
  const int l = 2 * p + 1;
  const int n = an.g.dim();
  HeisenbergData hd;
  hd.p = p;
  hd.m = n - l;
  hd.basis.resize(n, n);
  hd.basis << an.nil.basis() * an.cls.adapted_basis, an.complement;
  LieAlgebra moved = change_basis(an.g, hd.basis);
  const double tol = 1e-8 * moved.tol_scale();

  Vec lam_b = Vec::Zero(n);
  hd.lambda_y.resize(hd.m);
  for (int k = 0; k < hd.m; ++k) {
    const Mat& ad = moved.ad(l + k);
    Vec zcol = ad.col(2 * p);
    const double lam = zcol(2 * p);
    zcol(2 * p) = 0.0;
    if (zcol.cwiseAbs().maxCoeff() > tol) throw NilradicalMismatch("[Y, Z] is not a multiple of Z");
    hd.lambda_y(k) = lam;
    lam_b(l + k) = lam;
    hd.N.push_back(ad.topLeftCorner(2 * p, 2 * p));
    const double trace_gap = hd.N.back().trace() - p * lam;
    if (std::abs(trace_gap) > 1e-7 * moved.tol_scale())
      throw NilradicalMismatch("trace of N_Y differs from p * lambda(Y)");
  }
  hd.lambda = hd.basis.transpose().fullPivLu().solve(lam_b);
  hd.J = Mat::Zero(2 * p, 2 * p);
  hd.J.topRightCorner(p, p) = Mat::Identity(p, p);
  hd.J.bottomLeftCorner(p, p) = -Mat::Identity(p, p);
  if (hd.m > 0)
    hd.dforms = real_block_triangularize(hd.N);
  else {
    hd.dforms.basis_change = Mat::Identity(2 * p, 2 * p);
  }
  return hd;
}

FiliformData filiform_data(const Analysis& an) {
  if (an.cls.kind != NilKind::StandardFiliform) throw NilradicalMismatch("nilradical is not standard filiform");
  const int l = an.cls.l;
  const int n = an.g.dim();
  FiliformData fd;
  fd.l = l;
  fd.m = n - l;
  if (fd.m >= 3) throw RankTooHigh("a standard filiform nilradical admits rank at most 2, got " + std::to_string(fd.m));
  fd.basis.resize(n, n);
  fd.basis << an.nil.basis() * an.cls.adapted_basis, an.complement;
  LieAlgebra moved = change_basis(an.g, fd.basis);
  const double tol = 1e-8 * moved.tol_scale();

  Vec lam_b = Vec::Zero(n), iota_b = Vec::Zero(n);
  fd.lambda_y.resize(fd.m);
  fd.iota_y.resize(fd.m);
  for (int k = 0; k < fd.m; ++k) {
    const Mat& ad = moved.ad(l + k);
    Vec col = ad.col(l - 1).head(l);
    const double lam = col(l - 1);
    col(l - 1) = 0.0;
    if (col.cwiseAbs().maxCoeff() > tol) throw NilradicalMismatch("[Y, X_l] is not a multiple of X_l");
    if (max_abs(ad.block(0, 1, 1, l - 1)) > tol) throw NilradicalMismatch("ideal is not invariant under ad_Y");
    fd.lambda_y(k) = lam;
    fd.iota_y(k) = ad.block(1, 1, l - 1, l - 1).trace();
    lam_b(l + k) = fd.lambda_y(k);
    iota_b(l + k) = fd.iota_y(k);
  }
  Eigen::FullPivLU<Mat> lu(fd.basis.transpose());
  fd.lambda = lu.solve(lam_b);
  fd.iota = lu.solve(iota_b);
  fd.ideal = Subspace(n, fd.basis.block(0, 1, n, l - 1));
  if (fd.m == 1) {
    const Mat& ad = moved.ad(l);
    fd.a = ad(0, 0);
    fd.d = ad(1, 1);
    fd.t = ad.topLeftCorner(l, l).trace();
  }
  return fd;
}

}  // namespace solvric

#include "solvric/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "solvric/errors.hpp"
#include "solvric/triangulate.hpp"

namespace solvric {

namespace {

void check_index(int dim, int idx) {
  if (idx < 0 || idx >= dim)
    throw InvalidInput("structure constant index " + std::to_string(idx + 1) + " outside 1.." +
                       std::to_string(dim));
}

void check_length(const LieAlgebra& alg, const Vec& v) {
  if (v.size() != alg.dim())
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                            " for algebra of dimension " + std::to_string(alg.dim()));
}

}  // namespace

LieAlgebra::LieAlgebra(int dim, std::vector<StructureConstant> constants,
                       std::vector<std::string> labels)
    : dim_(dim), constants_(std::move(constants)), labels_(std::move(labels)) {
  build(true);
}

LieAlgebra LieAlgebra::unchecked(int dim, std::vector<StructureConstant> constants,
                                 std::vector<std::string> labels) {
  LieAlgebra alg;
  alg.dim_ = dim;
  alg.constants_ = std::move(constants);
  alg.labels_ = std::move(labels);
  alg.build(false);
  return alg;
}

LieAlgebra LieAlgebra::from_adjoints(const std::vector<Mat>& ad, std::vector<std::string> labels,
                                     double drop_tol, bool check_jacobi) {
  const int n = static_cast<int>(ad.size());
  std::vector<StructureConstant> cs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = 0.5 * (ad[i](k, j) - ad[j](k, i));
        if (std::abs(c) > drop_tol) cs.push_back({i, j, k, c});
      }
  LieAlgebra alg;
  alg.dim_ = n;
  alg.constants_ = std::move(cs);
  alg.labels_ = std::move(labels);
  alg.build(check_jacobi);
  return alg;
}

std::string LieAlgebra::label(int i) const {
  if (static_cast<std::size_t>(i) < labels_.size()) return labels_[static_cast<std::size_t>(i)];
  return "e" + std::to_string(i + 1);
}

void LieAlgebra::build(bool check_jacobi) {
  if (dim_ < 0) throw InvalidInput("negative dimension");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != dim_)
    throw InvalidInput("expected " + std::to_string(dim_) + " labels, got " +
                       std::to_string(labels_.size()));

  std::map<std::tuple<int, int, int>, double> merged;
  for (const auto& sc : constants_) {
    check_index(dim_, sc.i);
    check_index(dim_, sc.j);
    check_index(dim_, sc.k);
    if (!std::isfinite(sc.c)) throw InvalidInput("non-finite structure constant");
    if (sc.i == sc.j) {
      if (sc.c != 0.0) throw InvalidInput("bracket [e_i, e_i] must vanish");
      continue;
    }
    if (sc.i < sc.j)
      merged[{sc.i, sc.j, sc.k}] += sc.c;
    else
      merged[{sc.j, sc.i, sc.k}] -= sc.c;
  }
  constants_.clear();
  scale_ = 0.0;
  for (const auto& [key, c] : merged) {
    if (c == 0.0) continue;
    constants_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
    scale_ = std::max(scale_, std::abs(c));
  }

  ad_.assign(static_cast<std::size_t>(dim_), Mat::Zero(dim_, dim_));
  for (const auto& sc : constants_) {
    ad_[static_cast<std::size_t>(sc.i)](sc.k, sc.j) += sc.c;
    ad_[static_cast<std::size_t>(sc.j)](sc.k, sc.i) -= sc.c;
  }

  if (check_jacobi) {
    const double defect = jacobi_defect(*this);
    if (defect > 1e-10 * tol_scale() * tol_scale())
      throw JacobiViolated("Jacobi defect " + std::to_string(defect));
  }
}

Vec bracket(const LieAlgebra& alg, const Vec& x, const Vec& y) {
  check_length(alg, x);
  check_length(alg, y);
  return adjoint_matrix(alg, x) * y;
}

Mat adjoint_matrix(const LieAlgebra& alg, const Vec& y) {
  check_length(alg, y);
  Mat m = Mat::Zero(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i)
    if (y(i) != 0.0) m += y(i) * alg.ad(i);
  return m;
}

double jacobi_defect(const LieAlgebra& alg) {
  const int n = alg.dim();
  // bracket_ad[a][b] = ad([e_a, e_b])
  double worst = 0.0;
  std::vector<Mat> ad_of_bracket(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      ad_of_bracket[static_cast<std::size_t>(a * n + b)] =
          adjoint_matrix(alg, Vec(alg.ad(a).col(b)));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        Vec s = ad_of_bracket[static_cast<std::size_t>(a * n + b)].col(c) +
                ad_of_bracket[static_cast<std::size_t>(b * n + c)].col(a) +
                ad_of_bracket[static_cast<std::size_t>(c * n + a)].col(b);
        worst = std::max(worst, s.norm());
      }
  return worst;
}

Mat killing_form(const LieAlgebra& alg) {
  const int n = alg.dim();
  Mat b(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = u; v < n; ++v) {
      b(u, v) = (alg.ad(u) * alg.ad(v)).trace();
      b(v, u) = b(u, v);
    }
  return b;
}

Vec trace_form(const LieAlgebra& alg) {
  Vec t(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) t(i) = alg.ad(i).trace();
  return t;
}

Subspace bracket_span(const LieAlgebra& alg, const Subspace& a, const Subspace& b,
                      double rel_tol) {
  const int n = alg.dim();
  Mat spanning(n, a.dim() * b.dim());
  int col = 0;
  for (int p = 0; p < a.dim(); ++p) {
    Mat ad_p = adjoint_matrix(alg, Vec(a.basis().col(p)));
    for (int q = 0; q < b.dim(); ++q) spanning.col(col++) = ad_p * b.basis().col(q);
  }
  return Subspace(n, spanning, rel_tol * alg.tol_scale());
}

std::vector<Subspace> lower_central_series(const LieAlgebra& alg, double rel_tol) {
  std::vector<Subspace> chain{Subspace::whole(alg.dim())};
  const Subspace g = Subspace::whole(alg.dim());
  while (chain.back().dim() > 0) {
    Subspace next = bracket_span(alg, g, chain.back(), rel_tol);
    if (next.dim() == chain.back().dim()) break;
    chain.push_back(next);
  }
  return chain;
}

std::vector<Subspace> derived_series(const LieAlgebra& alg, double rel_tol) {
  std::vector<Subspace> chain{Subspace::whole(alg.dim())};
  for (int depth = 0; depth < 2 * alg.dim() + 1 && chain.back().dim() > 0; ++depth) {
    Subspace next = bracket_span(alg, chain.back(), chain.back(), rel_tol);
    if (next.dim() == chain.back().dim()) break;
    chain.push_back(next);
  }
  return chain;
}

bool is_solvable(const LieAlgebra& alg, double rel_tol) {
  return derived_series(alg, rel_tol).back().dim() == 0;
}

bool is_nilpotent(const LieAlgebra& alg, double rel_tol) {
  return lower_central_series(alg, rel_tol).back().dim() == 0;
}

bool is_unimodular(const LieAlgebra& alg, double rel_tol) {
  return trace_form(alg).cwiseAbs().maxCoeff() <= rel_tol * alg.tol_scale() * alg.dim() ||
         alg.dim() == 0;
}

Subspace center(const LieAlgebra& alg, double rel_tol) {
  const int n = alg.dim();
  if (n == 0) return Subspace::zero(0);
  Mat stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.block(i * n, 0, n, n) = alg.ad(i);
  return Subspace(n, null_space(stacked, rel_tol * alg.tol_scale()));
}

Subspace nilradical(const LieAlgebra& alg, double rel_tol) {
  const int n = alg.dim();
  if (!is_solvable(alg, rel_tol)) throw NotSolvable("derived series does not reach 0");
  if (is_nilpotent(alg, rel_tol)) return Subspace::whole(n);

  WeightData wd = real_block_triangularize(alg.ads());
  std::vector<Vec> forms;
  for (const auto& b : wd.blocks) {
    if (b.size == 1) {
      forms.push_back(b.lambda);
    } else {
      forms.push_back(b.alpha);
      forms.push_back(b.beta);
    }
  }
  Mat stacked(static_cast<int>(forms.size()), n);
  for (std::size_t r = 0; r < forms.size(); ++r) stacked.row(static_cast<int>(r)) = forms[r].transpose();
  // Weight forms carry the triangularization error (accepted up to 1e-7).
  const double tol = std::max(rel_tol, 1e-7) * alg.tol_scale() * std::sqrt(static_cast<double>(forms.size()));
  return Subspace(n, null_space(stacked, tol));
}

LieAlgebra restrict_to(const LieAlgebra& alg, const Subspace& sub, double rel_tol) {
  const Mat& w = sub.basis();
  const int l = sub.dim();
  std::vector<Mat> ad(static_cast<std::size_t>(l));
  for (int a = 0; a < l; ++a) {
    Mat full = adjoint_matrix(alg, Vec(w.col(a))) * w;
    Mat coeff = w.transpose() * full;
    if ((full - w * coeff).norm() > 1e3 * rel_tol * alg.tol_scale())
      throw InvalidInput("subspace is not closed under the bracket");
    ad[static_cast<std::size_t>(a)] = coeff;
  }
  return LieAlgebra::from_adjoints(ad, {}, 1e-13 * alg.tol_scale(), false);
}

LieAlgebra change_basis(const LieAlgebra& alg, const Mat& t) {
  const int n = alg.dim();
  if (t.rows() != n || t.cols() != n) throw DimensionMismatch("basis change must be n x n");
  Eigen::FullPivLU<Mat> lu(t);
  if (!lu.isInvertible() || std::abs(lu.determinant()) == 0.0) throw Singular("basis change is singular");
  Mat tinv = lu.inverse();
  std::vector<Mat> ad(static_cast<std::size_t>(n));
  double big = 0.0;
  for (int i = 0; i < n; ++i) {
    ad[static_cast<std::size_t>(i)] = tinv * adjoint_matrix(alg, Vec(t.col(i))) * t;
    big = std::max(big, max_abs(ad[static_cast<std::size_t>(i)]));
  }
  std::vector<std::string> labels;
  return LieAlgebra::from_adjoints(ad, labels, 1e-14 * big, false);
}

double leibniz_defect(const LieAlgebra& alg, const Mat& d) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    Mat ad_dx = adjoint_matrix(alg, Vec(d.col(x)));
    for (int y = 0; y < n; ++y) {
      Vec lhs = d * alg.ad(x).col(y);
      Vec rhs = ad_dx.col(y) + alg.ad(x) * d.col(y);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

LieAlgebra make_extension(const LieAlgebra& nil, const std::vector<Mat>& derivations,
                          const std::vector<MixedBracket>& mixed) {
  const int l = nil.dim();
  const int m = static_cast<int>(derivations.size());
  std::vector<StructureConstant> cs = nil.constants();
  for (int j = 0; j < m; ++j) {
    const Mat& dj = derivations[static_cast<std::size_t>(j)];
    if (dj.rows() != l || dj.cols() != l)
      throw DimensionMismatch("derivation must be " + std::to_string(l) + " x " + std::to_string(l));
    const double defect = leibniz_defect(nil, dj);
    if (defect > 1e-10 * std::max(1.0, max_abs(dj)) * nil.tol_scale())
      throw NotADerivation("derivation " + std::to_string(j + 1) + " has Leibniz defect " +
                           std::to_string(defect));
    for (int a = 0; a < l; ++a)
      for (int b = 0; b < l; ++b)
        if (dj(b, a) != 0.0) cs.push_back({a, l + j, b, -dj(b, a)});
  }
  for (const auto& mb : mixed) {
    if (mb.j < 0 || mb.j >= m || mb.k < 0 || mb.k >= m || mb.value.size() != l)
      throw DimensionMismatch("mixed bracket out of range");
    for (int a = 0; a < l; ++a)
      if (mb.value(a) != 0.0) cs.push_back({l + mb.j, l + mb.k, a, mb.value(a)});
  }
  std::vector<std::string> labels;
  if (!nil.labels().empty()) {
    labels = nil.labels();
    for (int j = 0; j < m; ++j) labels.push_back("Y" + std::to_string(j + 1));
  }
  return LieAlgebra(l + m, std::move(cs), std::move(labels));
}

}  // namespace solvric

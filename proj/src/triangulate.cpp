#include "solvric/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>

#include "solvric/errors.hpp"

namespace solvric {

namespace {

struct Cluster {
  cplx mean;
  int size = 0;
};

// Single-linkage grouping of eigenvalues at distance `tol`.
std::vector<std::vector<int>> group(const CVec& ev, const std::vector<int>& members, double tol) {
  const int n = static_cast<int>(members.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
    return a;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (std::abs(ev(members[static_cast<std::size_t>(a)]) - ev(members[static_cast<std::size_t>(b)])) <= tol)
        parent[static_cast<std::size_t>(find(a))] = find(b);
  std::vector<std::vector<int>> out;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    const int r = find(a);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(members[static_cast<std::size_t>(a)]);
  }
  return out;
}

CMat matrix_power(const CMat& m, int s) {
  CMat p = CMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < s; ++i) p = p * m;
  return p;
}

// Number of singular values of (m - theta)^s below the threshold; m is
// already normalized to unit scale.
int generalized_nullity(const CMat& m, cplx theta, int s) {
  CMat p = matrix_power(m - theta * CMat::Identity(m.rows(), m.cols()), s);
  Eigen::JacobiSVD<CMat> svd(p);
  const Vec& sv = svd.singularValues();
  int k = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-9) ++k;
  return k;
}

void refine(const CMat& mn, const CVec& ev, const std::vector<int>& members, double tol,
            std::vector<Cluster>& out) {
  for (const auto& g : group(ev, members, tol)) {
    cplx mean(0.0, 0.0);
    for (int i : g) mean += ev(i);
    mean /= static_cast<double>(g.size());
    const int s = static_cast<int>(g.size());
    if (s == 1 || tol < 1e-12 || generalized_nullity(mn, mean, s) >= s) {
      out.push_back({mean, s});
    } else {
      refine(mn, ev, g, tol / 8.0, out);
    }
  }
}

// Eigenvalue clusters of m whose sizes agree with the dimension of the
// generalized eigenspace at the cluster mean. Means are in units of m.
std::vector<Cluster> validated_clusters(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {};
  const double norm = std::max(1.0, m.norm());
  CMat mn = m / norm;
  Eigen::ComplexEigenSolver<CMat> es(mn, false);
  CVec ev = es.eigenvalues();
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  const double tol = std::max(1e-8, 3.0 * std::pow(1e-16, 1.0 / n));
  std::vector<Cluster> out;
  refine(mn, ev, all, tol, out);
  for (auto& c : out) c.mean *= norm;
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (std::abs(a.mean.real() - b.mean.real()) > 1e-12) return a.mean.real() < b.mean.real();
    return a.mean.imag() < b.mean.imag();
  });
  return out;
}

// Orthonormal basis of the generalized eigenspace of m at theta: the right
// singular vectors of (m - theta)^s for the s smallest singular values.
CMat generalized_eigenspace(const CMat& m, cplx theta, int s) {
  const double norm = std::max(1.0, m.norm());
  CMat p = matrix_power((m - theta * CMat::Identity(m.rows(), m.cols())) / norm, s);
  Eigen::JacobiSVD<CMat> svd(p, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(s);
}

double family_scale(const std::vector<CMat>& fam) {
  double s = 1.0;
  for (const auto& f : fam) s = std::max(s, f.norm());
  return s;
}

std::optional<CVec> common_eigenvector(const std::vector<CMat>& fam, std::mt19937& rng, int depth) {
  const int q = static_cast<int>(fam.front().rows());
  if (q == 1) return CVec::Ones(1);
  const double scale = family_scale(fam);
  const int r = static_cast<int>(fam.size());

  // Single-weight family: the joint kernel of (F_r - mean eigenvalue).
  {
    CMat stacked(q * r, q);
    for (int i = 0; i < r; ++i) {
      const cplx lam = fam[static_cast<std::size_t>(i)].trace() / static_cast<double>(q);
      stacked.block(i * q, 0, q, q) = fam[static_cast<std::size_t>(i)] - lam * CMat::Identity(q, q);
    }
    Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
    CVec v = svd.matrixV().col(q - 1);
    if ((stacked * v).norm() <= 1e-8 * scale) return v;
  }
  if (depth > 2 * q + 4) return std::nullopt;

  std::uniform_int_distribution<int> coef(1, 97);
  for (int attempt = 0; attempt < 6; ++attempt) {
    CMat g = CMat::Zero(q, q);
    for (int i = 0; i < r; ++i) g += (static_cast<double>(coef(rng)) / 31.0) * fam[static_cast<std::size_t>(i)];
    auto clusters = validated_clusters(g);
    if (clusters.size() < 2) continue;
    std::stable_partition(clusters.begin(), clusters.end(),
                          [](const Cluster& c) { return c.mean.imag() >= -1e-12; });
    for (const auto& c : clusters) {
      CMat w = generalized_eigenspace(g, c.mean, c.size);
      bool invariant = true;
      std::vector<CMat> restricted;
      for (const auto& f : fam) {
        CMat fw = f * w;
        CMat coeff = w.adjoint() * fw;
        if ((fw - w * coeff).norm() > 1e-7 * scale) {
          invariant = false;
          break;
        }
        restricted.push_back(coeff);
      }
      if (!invariant) continue;
      if (auto v = common_eigenvector(restricted, rng, depth + 1)) return CVec(w * *v);
    }
  }
  return std::nullopt;
}

// Smallest right singular vector of the stacked real system (M_r - lam_r).
Vec real_joint_eigenvector(const std::vector<Mat>& fam, const std::vector<double>& lam) {
  const int q = static_cast<int>(fam.front().rows());
  const int r = static_cast<int>(fam.size());
  Mat stacked(q * r, q);
  for (int i = 0; i < r; ++i)
    stacked.block(i * q, 0, q, q) = fam[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(i)] * Mat::Identity(q, q);
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  return svd.matrixV().col(q - 1);
}

struct Found {
  Mat vectors;  // 1 or 2 columns in global coordinates
};

// Joint kernel of the derived algebra of the generated matrix Lie algebra.
// For a solvable family it is nonzero, invariant, and the family commutes
// on it, so generalized eigenspaces there are invariant.
Mat derived_kernel(const std::vector<Mat>& fam, double scale) {
  const int q = static_cast<int>(fam.front().rows());
  std::vector<Mat> normalized;
  for (const auto& f : fam) normalized.push_back(f / scale);
  Mat lie = generated_lie_algebra(normalized, 1e-9);
  const int d = static_cast<int>(lie.cols());
  std::vector<Mat> brackets;
  for (int a = 0; a < d; ++a) {
    Eigen::Map<const Mat> ma(lie.col(a).data(), q, q);
    for (int b = a + 1; b < d; ++b) {
      Eigen::Map<const Mat> mb(lie.col(b).data(), q, q);
      brackets.push_back(ma * mb - mb * ma);
    }
  }
  if (brackets.empty()) return Mat::Identity(q, q);
  Mat stacked(q * static_cast<int>(brackets.size()), q);
  for (std::size_t i = 0; i < brackets.size(); ++i) stacked.block(static_cast<int>(i) * q, 0, q, q) = brackets[i];
  return null_space(stacked, 1e-7);
}

std::optional<WeightData> attempt(const std::vector<Mat>& gens, unsigned seed) {
  const int k = static_cast<int>(gens.front().rows());
  const int r = static_cast<int>(gens.size());
  std::mt19937 rng(seed);
  double scale = 1.0;
  for (const auto& g : gens) scale = std::max(scale, g.norm());

  std::vector<Found> found;
  Mat embed = Mat::Identity(k, k);
  std::vector<Mat> fam = gens;
  bool borderline = false;
  while (embed.cols() > 0) {
    const int q = static_cast<int>(embed.cols());
    std::vector<CMat> cfam;
    for (const auto& f : fam) cfam.push_back(f.cast<cplx>());
    // Search inside the derived kernel when it is a proper invariant subspace.
    Mat kern = derived_kernel(fam, scale);
    std::vector<CMat> search = cfam;
    bool restricted = false;
    if (kern.cols() > 0 && kern.cols() < q) {
      std::vector<CMat> sub;
      for (const auto& f : fam) {
        Mat fk = f * kern;
        Mat coeff = kern.transpose() * fk;
        if ((fk - kern * coeff).norm() > 1e-7 * scale) break;
        sub.push_back(coeff.cast<cplx>());
      }
      if (sub.size() == fam.size()) {
        search = sub;
        restricted = true;
      }
    }
    auto v = common_eigenvector(search, rng, 0);
    if (v && restricted) v = CVec(kern.cast<cplx>() * *v);
    if (!v && restricted) v = common_eigenvector(cfam, rng, 0);
    if (!v) return std::nullopt;
    const cplx denom = v->squaredNorm();
    std::vector<cplx> lam(static_cast<std::size_t>(r));
    double max_im = 0.0;
    for (int i = 0; i < r; ++i) {
      lam[static_cast<std::size_t>(i)] = v->dot(cfam[static_cast<std::size_t>(i)] * *v) / denom;
      max_im = std::max(max_im, std::abs(lam[static_cast<std::size_t>(i)].imag()));
    }
    Mat local;
    if (max_im <= 1e-7 * scale) {
      if (max_im > 1e-11 * scale) borderline = true;
      std::vector<double> re;
      for (const auto& l : lam) re.push_back(l.real());
      Vec x = real_joint_eigenvector(fam, re);
      local = x / x.norm();
    } else {
      Vec a = v->real();
      Vec b = v->imag();
      const double phi = 0.5 * std::atan2(-2.0 * a.dot(b), a.squaredNorm() - b.squaredNorm());
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      Vec x1 = a * c - b * s;
      Vec x2 = a * s + b * c;
      const double nrm = std::sqrt(0.5 * (x1.squaredNorm() + x2.squaredNorm()));
      local.resize(q, 2);
      local.col(0) = x1 / nrm;
      local.col(1) = x2 / nrm;
    }
    found.push_back({embed * local});
    Mat comp = orthogonal_complement(Subspace(q, local).basis(), q);
    if (comp.cols() != q - local.cols()) return std::nullopt;
    for (auto& f : fam) f = comp.transpose() * f * comp;
    embed = embed * comp;
  }

  // Reverse the discovery order so the result is lower triangular.
  WeightData wd;
  wd.num_generators = r;
  wd.borderline = borderline;
  wd.basis_change.resize(k, k);
  int col = 0;
  for (auto it = found.rbegin(); it != found.rend(); ++it) {
    WeightBlock b;
    b.size = static_cast<int>(it->vectors.cols());
    b.offset = col;
    wd.basis_change.middleCols(col, b.size) = it->vectors;
    col += b.size;
    wd.blocks.push_back(b);
  }

  Eigen::FullPivLU<Mat> lu(wd.basis_change);
  if (!lu.isInvertible()) return std::nullopt;
  Mat pinv = lu.inverse();
  const double tol = 1e-6 * scale;
  for (auto& b : wd.blocks) {
    if (b.size == 1) b.lambda.resize(r);
    else {
      b.alpha.resize(r);
      b.beta.resize(r);
    }
  }
  for (int i = 0; i < r; ++i) {
    Mat a = pinv * gens[static_cast<std::size_t>(i)] * wd.basis_change;
    for (const auto& b : wd.blocks) {
      const int end = b.offset + b.size;
      if (end < k && a.block(b.offset, end, b.size, k - end).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    }
    for (auto& b : wd.blocks) {
      const int o = b.offset;
      if (b.size == 1) {
        b.lambda(i) = a(o, o);
      } else {
        if (std::abs(a(o, o) - a(o + 1, o + 1)) > tol || std::abs(a(o, o + 1) + a(o + 1, o)) > tol)
          return std::nullopt;
        b.alpha(i) = 0.5 * (a(o, o) + a(o + 1, o + 1));
        b.beta(i) = 0.5 * (a(o, o + 1) - a(o + 1, o));
      }
    }
  }
  return wd;
}

}  // namespace

WeightData real_block_triangularize(const std::vector<Mat>& generators) {
  if (generators.empty()) {
    WeightData wd;
    wd.basis_change = Mat::Identity(0, 0);
    return wd;
  }
  const int k = static_cast<int>(generators.front().rows());
  for (const auto& g : generators)
    if (g.rows() != k || g.cols() != k) throw DimensionMismatch("generators must share a square shape");
  if (k == 0) {
    WeightData wd;
    wd.basis_change = Mat(0, 0);
    wd.num_generators = static_cast<int>(generators.size());
    return wd;
  }
  if (!is_solvable_family(generators, 1e-9))
    throw NotSolvableFamily("generated matrix Lie algebra is not solvable");
  for (unsigned seed : {20240601u, 7u, 99991u, 123456789u, 31337u})
    if (auto wd = attempt(generators, seed)) return *wd;
  throw NoCommonEigenvector("simultaneous triangularization did not converge");
}

std::vector<WeightValue> weights_of(const WeightData& data, const Vec& y) {
  std::vector<WeightValue> out;
  for (const auto& b : data.blocks) {
    if (b.size == 1)
      out.push_back({eval_form(b.lambda, y), 0.0, 1});
    else
      out.push_back({eval_form(b.alpha, y), eval_form(b.beta, y), 2});
  }
  return out;
}

bool no_skew_elements(const std::vector<Mat>& generators, const Mat& basis) {
  if (generators.empty()) return true;
  const int k = static_cast<int>(basis.rows());
  Eigen::FullPivLU<Mat> lu(basis);
  if (!lu.isInvertible()) throw Singular("basis is singular");
  Mat binv = lu.inverse();
  const int r = static_cast<int>(generators.size());
  Mat full(k * k, r), sym(k * k, r);
  double scale = 0.0;
  for (int i = 0; i < r; ++i) {
    Mat a = binv * generators[static_cast<std::size_t>(i)] * basis;
    full.col(i) = vectorize(a);
    sym.col(i) = vectorize(Mat(0.5 * (a + a.transpose())));
    scale = std::max(scale, a.norm());
  }
  const double tol = 1e-9 * std::max(1.0, scale);
  return numeric_rank(sym, tol) == numeric_rank(full, tol);
}

Mat skew_avoiding_scaling(const WeightData& data, const std::vector<Mat>& generators, double factor) {
  const int k = data.dim();
  auto build = [&](const std::vector<double>& factors) {
    Mat d = Mat::Identity(k, k);
    std::size_t idx = 0;
    for (const auto& b : data.blocks)
      if (b.size == 2) d(b.offset, b.offset) = factors[std::min(idx++, factors.size() - 1)];
    return d;
  };
  Mat d = build({factor});
  if (no_skew_elements(generators, data.basis_change * d)) return d;
  std::vector<double> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  d = build(primes);
  if (no_skew_elements(generators, data.basis_change * d)) return d;
  throw VerificationFailed("could not find a scaling avoiding skew-symmetric elements");
}

Mat generated_lie_algebra(const std::vector<Mat>& generators, double abs_tol) {
  if (generators.empty()) return Mat(0, 0);
  const int k = static_cast<int>(generators.front().rows());
  Mat span(k * k, static_cast<int>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) span.col(static_cast<int>(i)) = vectorize(generators[i]);
  Mat basis = column_space(span, abs_tol);
  for (int round = 0; round < k * k + 1; ++round) {
    const int d = static_cast<int>(basis.cols());
    std::vector<Vec> cols;
    for (int a = 0; a < d; ++a) cols.push_back(basis.col(a));
    for (int a = 0; a < d; ++a) {
      Eigen::Map<const Mat> ma(basis.col(a).data(), k, k);
      for (int b = a + 1; b < d; ++b) {
        Eigen::Map<const Mat> mb(basis.col(b).data(), k, k);
        Mat c = ma * mb - mb * ma;
        cols.push_back(vectorize(c));
      }
    }
    Mat all(k * k, static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) all.col(static_cast<int>(i)) = cols[i];
    Mat next = column_space(all, abs_tol);
    if (next.cols() == d) return next;
    basis = next;
  }
  return basis;
}

bool is_solvable_family(const std::vector<Mat>& generators, double abs_tol) {
  if (generators.empty()) return true;
  double scale = 0.0;
  for (const auto& g : generators) scale = std::max(scale, g.norm());
  if (scale == 0.0) return true;
  std::vector<Mat> normalized;
  for (const auto& g : generators) normalized.push_back(g / scale);
  const int k = static_cast<int>(generators.front().rows());
  Mat basis = generated_lie_algebra(normalized, abs_tol);
  for (int depth = 0; depth <= k * k; ++depth) {
    const int d = static_cast<int>(basis.cols());
    if (d == 0) return true;
    std::vector<Vec> cols;
    for (int a = 0; a < d; ++a) {
      Eigen::Map<const Mat> ma(basis.col(a).data(), k, k);
      for (int b = a + 1; b < d; ++b) {
        Eigen::Map<const Mat> mb(basis.col(b).data(), k, k);
        cols.push_back(vectorize(Mat(ma * mb - mb * ma)));
      }
    }
    if (cols.empty()) return true;
    Mat all(k * k, static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) all.col(static_cast<int>(i)) = cols[i];
    Mat next = column_space(all, abs_tol);
    if (next.cols() == d) return false;
    basis = next;
  }
  return false;
}

Mat semisimple_part(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return m;
  CMat cm = m.cast<cplx>();
  auto clusters = validated_clusters(cm);
  CMat v(n, n);
  CVec diag(n);
  int col = 0;
  for (const auto& c : clusters) {
    if (col + c.size > n) throw NotSemisimple("generalized eigenspaces overlap");
    v.middleCols(col, c.size) = generalized_eigenspace(cm, c.mean, c.size);
    diag.segment(col, c.size).setConstant(c.mean);
    col += c.size;
  }
  Eigen::FullPivLU<CMat> lu(v);
  if (col != n || lu.rank() < n) throw NotSemisimple("generalized eigenspaces do not span");
  CMat s = v * diag.asDiagonal() * lu.inverse();
  return s.real();
}

std::vector<EigenCluster> eigen_clusters(const Mat& m) {
  std::vector<EigenCluster> out;
  for (const auto& c : validated_clusters(m.cast<cplx>())) out.push_back({c.mean, c.size});
  return out;
}

CMat generalized_eigenspace(const Mat& m, cplx value, int multiplicity) {
  return generalized_eigenspace(CMat(m.cast<cplx>()), value, multiplicity);
}

bool is_semisimple(const Mat& m, double rel_tol) {
  const double norm = std::max(1.0, m.norm());
  CMat cm = m.cast<cplx>();
  for (const auto& c : validated_clusters(cm)) {
    CMat shifted = (cm - c.mean * CMat::Identity(m.rows(), m.cols())) / norm;
    Eigen::JacobiSVD<CMat> svd(shifted);
    const Vec& sv = svd.singularValues();
    int nullity = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) <= rel_tol) ++nullity;
    if (nullity < c.size) return false;
  }
  return true;
}

}  // namespace solvric

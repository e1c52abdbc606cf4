#include "solvric/degenerate.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include <unsupported/Eigen/MatrixFunctions>

#include "solvric/errors.hpp"

namespace solvric {

namespace {

Mat flow_matrix(const OneParamGroup& grp, double s) {
  if (grp.diagonal()) return (s * grp.generator.diagonal()).array().exp().matrix().asDiagonal();
  return Mat(s * grp.generator).exp();
}

using Key = std::tuple<int, int, int>;

std::map<Key, double> as_map(const LieAlgebra& alg) {
  std::map<Key, double> out;
  for (const auto& c : alg.constants()) out[{c.i, c.j, c.k}] = c.c;
  return out;
}

std::string key_name(const Key& k) {
  return "(" + std::to_string(std::get<0>(k) + 1) + "," + std::to_string(std::get<1>(k) + 1) + "," +
         std::to_string(std::get<2>(k) + 1) + ")";
}

}  // namespace

bool OneParamGroup::diagonal() const {
  Mat off = generator;
  off.diagonal().setZero();
  return off.size() == 0 || off.cwiseAbs().maxCoeff() == 0.0;
}

LieAlgebra act(const Mat& t, const LieAlgebra& alg) { return change_basis(alg, t); }

LieAlgebra act_flow(const OneParamGroup& grp, double s, const LieAlgebra& alg) {
  if (grp.generator.rows() != alg.dim() || grp.generator.cols() != alg.dim())
    throw DimensionMismatch("one-parameter group of the wrong size");
  if (!grp.diagonal()) return act(flow_matrix(grp, s), alg);
  const Vec d = grp.generator.diagonal();
  std::vector<StructureConstant> cs;
  for (const auto& c : alg.constants()) cs.push_back({c.i, c.j, c.k, c.c * std::exp(s * (d(c.i) + d(c.j) - d(c.k)))});
  return LieAlgebra::unchecked(alg.dim(), std::move(cs), alg.labels());
}

LimitResult limit(const LieAlgebra& alg, const OneParamGroup& grp) {
  LimitResult res;
  std::vector<StructureConstant> kept;
  if (grp.diagonal()) {
    const Vec d = grp.generator.diagonal();
    for (const auto& c : alg.constants()) {
      const double e = d(c.i) + d(c.j) - d(c.k);
      if (e > 1e-12) throw Diverging("constant " + key_name({c.i, c.j, c.k}) + " grows without bound");
      if (e < -1e-12)
        res.died.push_back(c);
      else
        kept.push_back(c);
    }
  } else {
    // Geometric schedule s = 1, 2, 4, ..., 32.
    std::vector<std::map<Key, double>> samples;
    for (double s = 1.0; s <= 32.0; s *= 2.0) samples.push_back(as_map(act_flow(grp, s, alg)));
    std::map<Key, bool> keys;
    for (const auto& smp : samples)
      for (const auto& [k, v] : smp) keys[k] = true;
    auto at = [&](std::size_t idx, const Key& k) {
      auto it = samples[idx].find(k);
      return it == samples[idx].end() ? 0.0 : it->second;
    };
    const std::size_t last = samples.size() - 1;
    const double scale = alg.tol_scale();
    for (const auto& [k, unused] : keys) {
      (void)unused;
      const double prev = std::abs(at(last - 1, k));
      const double cur = std::abs(at(last, k));
      if (cur <= 1e-12 * scale || (prev > 0 && cur <= prev / 10.0)) {
        continue;  // dying
      }
      if (prev > 0 && cur >= 10.0 * prev) throw Diverging("constant " + key_name(k) + " grows without bound");
      if (std::abs(at(last, k) - at(last - 1, k)) > 1e-6 * std::max(1.0, cur))
        throw Diverging("constant " + key_name(k) + " does not settle");
      kept.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), at(last, k)});
    }
    for (const auto& c : alg.constants()) {
      bool alive = false;
      for (const auto& kc : kept) alive = alive || (kc.i == c.i && kc.j == c.j && kc.k == c.k);
      if (!alive) res.died.push_back(c);
    }
  }
  res.survived = kept;
  res.limit = LieAlgebra(alg.dim(), kept, alg.labels());
  return res;
}

Certificate pullback_metric_search(const LieAlgebra& alg, const OneParamGroup& grp, const InnerProduct& metric_on_limit,
                                   const PullbackOptions& opt, const std::string& provenance) {
  std::string last_reason = "no grid point certified";
  for (int step = 0;; ++step) {
    const double s = step * opt.s_step;
    if (s > opt.s_max + 1e-12) break;
    Mat t = flow_matrix(grp, s);
    Eigen::JacobiSVD<Mat> svd(t);
    const double cond_t = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    if (cond_t * cond_t > opt.max_condition) {
      last_reason = "conditioning limit reached at s = " + std::to_string(s);
      break;
    }
    LieAlgebra moved = act_flow(grp, s, alg);
    Mat ric = ricci_orthonormal(change_basis(moved, orthonormal_frame(metric_on_limit)));
    if (definiteness(ric) != Definiteness::NegativeDefinite) continue;
    Mat tinv = t.inverse();
    Mat q = tinv.transpose() * metric_on_limit.gram() * tinv;
    q = Mat(0.5 * (q + q.transpose()));
    Certificate c = make_certificate(alg, InnerProduct(q), provenance);
    c.s = s;
    if (c.certified()) return c;
    last_reason = "pulled-back metric failed verification at s = " + std::to_string(s);
  }
  throw BudgetExhausted("pullback search: " + last_reason);
}

}  // namespace solvric

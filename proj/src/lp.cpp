#include "solvric/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace solvric {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Exists: return "Exists";
    case Verdict::NotExists: return "NotExists";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

LpSolution simplex_max(const Mat& a, const Vec& b, const Vec& c) {
  const int r = static_cast<int>(a.rows());
  const int nv = static_cast<int>(a.cols());
  const int cols = nv + r + 1;
  const int rhs = cols - 1;
  constexpr double eps = 1e-12;
  Mat t = Mat::Zero(r + 1, cols);
  t.topLeftCorner(r, nv) = a;
  t.block(0, nv, r, r) = Mat::Identity(r, r);
  t.col(rhs).head(r) = b.cwiseMax(0.0);
  t.row(r).head(nv) = -c.transpose();
  std::vector<int> basis(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) basis[static_cast<std::size_t>(i)] = nv + i;

  LpSolution sol;
  for (int iter = 0;; ++iter) {
    if (iter > 50000) {
      sol.status = LpStatus::IterationLimit;
      break;
    }
    int enter = -1;
    for (int j = 0; j < nv + r; ++j)
      if (t(r, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < r; ++i) {
      if (t(i, enter) <= eps) continue;
      const double ratio = t(i, rhs) / t(i, enter);
      if (ratio < best - eps ||
          (ratio <= best + eps && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        if (ratio < best) best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      sol.status = LpStatus::Unbounded;
      break;
    }
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= r; ++i)
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  sol.x = Vec::Zero(nv);
  for (int i = 0; i < r; ++i)
    if (basis[static_cast<std::size_t>(i)] < nv) sol.x(basis[static_cast<std::size_t>(i)]) = t(i, rhs);
  sol.optimum = c.dot(sol.x);
  return sol;
}

double evaluate(const StrictSystem& sys, const Vec& y) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& f : sys.forms) v = std::min(v, f.dot(y));
  if (sys.concave) {
    double s = sys.concave->plain.dot(y);
    for (std::size_t i = 0; i < sys.concave->pieces.size(); ++i)
      s += sys.concave->weights[i] * std::min(0.0, sys.concave->pieces[i].dot(y));
    v = std::min(v, s);
  }
  return v;
}

namespace {

double system_scale(const StrictSystem& sys) {
  double s = 1.0;
  for (const auto& f : sys.forms) s = std::max(s, f.norm());
  if (sys.concave) {
    s = std::max(s, sys.concave->plain.norm());
    for (std::size_t i = 0; i < sys.concave->pieces.size(); ++i)
      s = std::max(s, std::abs(sys.concave->weights[i]) * sys.concave->pieces[i].norm());
  }
  return s;
}

// True if some nonzero y in the unit box satisfies every a_j . y <= slack.
bool nontrivial_cone(const std::vector<Vec>& forms, int m) {
  const int rows = 2 * m + static_cast<int>(forms.size());
  Mat a = Mat::Zero(rows, 2 * m);
  Vec b(rows);
  for (int i = 0; i < m; ++i) {
    a(i, i) = 1.0;
    a(m + i, m + i) = 1.0;
    b(i) = 1.0;
    b(m + i) = 1.0;
  }
  for (std::size_t j = 0; j < forms.size(); ++j) {
    const int row = 2 * m + static_cast<int>(j);
    a.block(row, 0, 1, m) = forms[j].transpose();
    a.block(row, m, 1, m) = -forms[j].transpose();
    b(row) = 1e-9;
  }
  for (int i = 0; i < m; ++i)
    for (double sign : {1.0, -1.0}) {
      Vec c = Vec::Zero(2 * m);
      c(i) = sign;
      c(m + i) = -sign;
      LpSolution sol = simplex_max(a, b, c);
      if (sol.status != LpStatus::Optimal || sol.optimum > 1e-4) return true;
    }
  return false;
}

}  // namespace

DecisionReport lp_strict_feasible(const StrictSystem& sys) {
  const int m = sys.m;
  DecisionReport rep;
  if (sys.forms.empty() && !sys.concave) {
    rep.verdict = Verdict::Exists;
    rep.witness = m > 0 ? Vec(Vec::Unit(m, 0)) : Vec(0);
    rep.margin = 1.0;
    rep.detail = "empty system";
    return rep;
  }
  if (m == 0) {
    rep.witness = Vec(0);
    rep.margin = evaluate(sys, Vec(0));
    rep.verdict = rep.margin > 0 ? Verdict::Exists : Verdict::NotExists;
    return rep;
  }
  const int k = sys.concave ? static_cast<int>(sys.concave->pieces.size()) : 0;
  const int nv = 2 * m + 1 + k;
  const int tcol = 2 * m;
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (int i = 0; i < 2 * m; ++i) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nv);
    row(i) = 1.0;
    rows.push_back(row);
    rhs.push_back(1.0);
  }
  auto form_row = [&](const Vec& f) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(nv);
    row.segment(0, m) = -f.transpose();
    row.segment(m, m) = f.transpose();
    return row;
  };
  for (const auto& f : sys.forms) {
    Eigen::RowVectorXd row = form_row(f);
    row(tcol) = 1.0;
    rows.push_back(row);
    rhs.push_back(0.0);
  }
  if (sys.concave) {
    Eigen::RowVectorXd row = form_row(sys.concave->plain);
    row(tcol) = 1.0;
    for (int i = 0; i < k; ++i) row(tcol + 1 + i) = sys.concave->weights[static_cast<std::size_t>(i)];
    rows.push_back(row);
    rhs.push_back(0.0);
    for (int i = 0; i < k; ++i) {
      Eigen::RowVectorXd r2 = form_row(sys.concave->pieces[static_cast<std::size_t>(i)]);
      r2(tcol + 1 + i) = -1.0;
      rows.push_back(r2);
      rhs.push_back(0.0);
    }
  }
  Mat a(static_cast<int>(rows.size()), nv);
  Vec b(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(static_cast<int>(i)) = rows[i];
    b(static_cast<int>(i)) = rhs[i];
  }
  Vec c = Vec::Zero(nv);
  c(tcol) = 1.0;
  LpSolution sol = simplex_max(a, b, c);
  Vec y = sol.x.head(m) - sol.x.segment(m, m);
  rep.witness = y;
  rep.margin = evaluate(sys, y);
  const double scale = system_scale(sys);
  if (sol.status == LpStatus::Optimal && rep.margin > 1e-9 * scale) {
    rep.verdict = Verdict::Exists;
    return rep;
  }
  if (sol.status != LpStatus::Optimal) {
    rep.verdict = Verdict::Unknown;
    rep.detail = "simplex did not reach an optimum";
    return rep;
  }

  // Optimum is zero: decide whether zero sits robustly inside the hull.
  std::vector<Vec> normalized;
  auto add = [&](const Vec& f) {
    const double nrm = f.norm();
    if (nrm > 1e-9 * scale) normalized.push_back(f / nrm);
  };
  for (const auto& f : sys.forms) add(f);
  if (sys.concave) {
    if (k > 12) {
      rep.verdict = Verdict::Unknown;
      rep.detail = "optimum is zero; too many pieces for the boundary test";
      return rep;
    }
    for (int mask = 0; mask < (1 << k); ++mask) {
      Vec h = sys.concave->plain;
      for (int i = 0; i < k; ++i)
        if (mask & (1 << i)) h += sys.concave->weights[static_cast<std::size_t>(i)] * sys.concave->pieces[static_cast<std::size_t>(i)];
      add(h);
    }
  }
  rep.witness.reset();
  if (nontrivial_cone(normalized, m)) {
    rep.verdict = Verdict::Unknown;
    rep.detail = "optimum is zero on a boundary case";
  } else {
    rep.verdict = Verdict::NotExists;
    rep.detail = "zero lies in the interior of the convex hull of the forms";
  }
  return rep;
}

}  // namespace solvric

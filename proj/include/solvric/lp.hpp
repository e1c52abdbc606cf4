#pragma once

#include <optional>
#include <string>
#include <vector>

#include "solvric/linalg.hpp"

namespace solvric {

enum class Verdict { Exists, NotExists, Unknown };
std::string to_string(Verdict v);

struct DecisionReport {
  Verdict verdict = Verdict::Unknown;
  std::optional<Vec> witness;
  std::string theorem;
  double margin = 0.0;
  std::string detail;
};

enum class LpStatus { Optimal, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Vec x;
  double optimum = 0.0;
};

/// max c.x subject to A x <= b, x >= 0, with b >= 0 so the origin is a
/// feasible start. Dense tableau, Bland's rule.
LpSolution simplex_max(const Mat& a, const Vec& b, const Vec& c);

/// lambda(Y) + sum_i w_i * min(0, g_i(Y)).
struct ConcavePart {
  Vec plain;
  std::vector<Vec> pieces;
  std::vector<double> weights;
};

/// All forms(Y) > 0 and, if present, concave(Y) > 0, over Y in R^m.
struct StrictSystem {
  int m = 0;
  std::vector<Vec> forms;
  std::optional<ConcavePart> concave;
};

/// min over the defining forms (and the concave part) at y.
double evaluate(const StrictSystem& sys, const Vec& y);

/// Strict feasibility via slack maximization over the box |Y|_inf <= 1.
/// Exists: witness with positive margin. NotExists: zero lies robustly in
/// the interior of the convex hull of the (normalized) forms. Unknown:
/// optimum is zero but only up to a boundary case.
DecisionReport lp_strict_feasible(const StrictSystem& sys);

}  // namespace solvric

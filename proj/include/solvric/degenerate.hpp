#pragma once

#include <string>
#include <vector>

#include "solvric/certificate.hpp"
#include "solvric/lie_algebra.hpp"

namespace solvric {

/// s -> exp(s N).
struct OneParamGroup {
  Mat generator;
  std::string description;

  bool diagonal() const;
};

/// (T.mu)(x, y) = T^{-1} mu(T x, T y). Contravariant:
/// act(T2, act(T1, mu)) = act(T1 T2, mu). Throws Singular.
LieAlgebra act(const Mat& t, const LieAlgebra& alg);

/// act(exp(s N), alg); exact exponent bookkeeping when N is diagonal.
LieAlgebra act_flow(const OneParamGroup& grp, double s, const LieAlgebra& alg);

struct LimitResult {
  LieAlgebra limit;
  std::vector<StructureConstant> survived;
  std::vector<StructureConstant> died;  ///< original values of vanishing constants
};

/// lim_{s -> inf} exp(sN).mu. Throws Diverging naming the first growing
/// constant.
LimitResult limit(const LieAlgebra& alg, const OneParamGroup& grp);

struct PullbackOptions {
  double s_max = 40.0;
  double s_step = 0.25;
  double max_condition = 1e12;
};

/// Finds the first s on the grid for which (exp(sN).mu, metric_on_limit)
/// has negative Ricci curvature and returns the equivalent metric
/// T^{-T} Q T^{-1} on the original algebra, certified there.
/// Throws BudgetExhausted.
Certificate pullback_metric_search(const LieAlgebra& alg, const OneParamGroup& grp, const InnerProduct& metric_on_limit,
                                   const PullbackOptions& opt = {}, const std::string& provenance = "pullback");

}  // namespace solvric

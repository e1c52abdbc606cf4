#pragma once

#include <string>
#include <vector>

#include "solvric/classify.hpp"
#include "solvric/lp.hpp"

namespace solvric {

/// Tags reported in DecisionReport::theorem.
namespace theorem {
inline constexpr const char* kUnimodular = "unimodular-flatness";
inline constexpr const char* kGeneralSufficient = "general-sufficient";
inline constexpr const char* kGeneralNecessary = "general-necessary";
inline constexpr const char* kAbelian = "abelian-nilradical";
inline constexpr const char* kHeisenberg = "heisenberg-nilradical";
inline constexpr const char* kFiliform = "filiform-nilradical";
inline constexpr const char* kPolicy = "necessary/sufficient";
}  // namespace theorem

/// Restrictions (ad_{Y_k})|V for the complement basis Y_k, written in the
/// orthonormal basis of the ad(g)-invariant subspace V.
std::vector<Mat> restricted_family(const Analysis& an, const Subspace& v);

/// Witnesses are reported in the coordinates of g. Unimodular inputs return
/// NotExists from every checker.
DecisionReport decide_general_sufficient(const Analysis& an);
DecisionReport decide_general_necessary(const Analysis& an);
DecisionReport decide_heisenberg(const Analysis& an, const HeisenbergData& hd);
DecisionReport decide_filiform(const Analysis& an, const FiliformData& fd);

/// The system the Heisenberg criterion maximizes, over complement
/// coordinates.
StrictSystem heisenberg_system(const HeisenbergData& hd);

/// f(Y) = lambda(Y) + sum over Re d_i(Y) < 0 of Re d_i(Y), Y in complement
/// coordinates, eigenvalues computed directly from N_Y.
double heisenberg_objective(const HeisenbergData& hd, const Vec& y);

struct OverallDecision {
  Verdict verdict = Verdict::Unknown;
  std::string theorem;
  std::string nil_class;
  DecisionReport primary;
  std::vector<std::pair<std::string, DecisionReport>> sub;
};

/// Dispatch on the nilradical class; the necessary and sufficient tests are
/// always reported as sub-verdicts.
OverallDecision decide(const Analysis& an);

}  // namespace solvric

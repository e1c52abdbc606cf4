#include "solvric/decide.hpp"

#include <Eigen/Eigenvalues>

namespace solvric {

namespace {

DecisionReport unimodular_report() {
  DecisionReport rep;
  rep.verdict = Verdict::NotExists;
  rep.theorem = theorem::kUnimodular;
  rep.detail = "unimodular solvable algebra: Ric <= 0 forces a flat metric";
  return rep;
}

void to_g_coordinates(const Analysis& an, DecisionReport& rep) {
  if (rep.witness) rep.witness = Vec(an.complement * *rep.witness);
}

std::vector<Vec> positive_real_part_forms(const WeightData& wd) {
  std::vector<Vec> forms;
  for (const auto& b : wd.blocks) forms.push_back(b.size == 1 ? b.lambda : b.alpha);
  return forms;
}

}  // namespace

std::vector<Mat> restricted_family(const Analysis& an, const Subspace& v) {
  std::vector<Mat> fam;
  const Mat& w = v.basis();
  for (int k = 0; k < an.rank(); ++k)
    fam.push_back(w.transpose() * adjoint_matrix(an.g, Vec(an.complement.col(k))) * w);
  return fam;
}

DecisionReport decide_general_sufficient(const Analysis& an) {
  if (is_unimodular(an.g)) return unimodular_report();
  StrictSystem sys;
  sys.m = an.rank();
  sys.forms = positive_real_part_forms(real_block_triangularize(restricted_family(an, an.nil)));
  DecisionReport rep = lp_strict_feasible(sys);
  rep.theorem = theorem::kGeneralSufficient;
  to_g_coordinates(an, rep);
  return rep;
}

DecisionReport decide_general_necessary(const Analysis& an) {
  if (is_unimodular(an.g)) return unimodular_report();
  StrictSystem sys;
  sys.m = an.rank();
  Vec trace(sys.m);
  for (int k = 0; k < sys.m; ++k) trace(k) = adjoint_matrix(an.g, Vec(an.complement.col(k))).trace();
  sys.forms.push_back(trace);
  // Center of the nilradical, as a subspace of g.
  Subspace z = center(an.nil_alg);
  Subspace zg(an.g.dim(), an.nil.basis() * z.basis());
  for (const auto& f : positive_real_part_forms(real_block_triangularize(restricted_family(an, zg))))
    sys.forms.push_back(f);
  DecisionReport rep = lp_strict_feasible(sys);
  rep.theorem = theorem::kGeneralNecessary;
  to_g_coordinates(an, rep);
  return rep;
}

StrictSystem heisenberg_system(const HeisenbergData& hd) {
  StrictSystem sys;
  sys.m = hd.m;
  ConcavePart cp;
  cp.plain = hd.lambda_y;
  for (const auto& b : hd.dforms.blocks) {
    cp.pieces.push_back(b.size == 1 ? b.lambda : b.alpha);
    cp.weights.push_back(b.size);
  }
  sys.concave = cp;
  return sys;
}

double heisenberg_objective(const HeisenbergData& hd, const Vec& y) {
  Mat n = Mat::Zero(2 * hd.p, 2 * hd.p);
  for (int k = 0; k < hd.m; ++k) n += y(k) * hd.N[static_cast<std::size_t>(k)];
  double f = hd.lambda_y.dot(y);
  Eigen::EigenSolver<Mat> es(n, false);
  for (int i = 0; i < n.rows(); ++i) f += std::min(0.0, es.eigenvalues()(i).real());
  return f;
}

DecisionReport decide_heisenberg(const Analysis& an, const HeisenbergData& hd) {
  if (is_unimodular(an.g)) return unimodular_report();
  DecisionReport rep = lp_strict_feasible(heisenberg_system(hd));
  rep.theorem = theorem::kHeisenberg;
  to_g_coordinates(an, rep);
  return rep;
}

DecisionReport decide_filiform(const Analysis& an, const FiliformData& fd) {
  if (is_unimodular(an.g)) return unimodular_report();
  StrictSystem sys;
  sys.m = fd.m;
  sys.forms = {fd.lambda_y, fd.iota_y};
  DecisionReport rep = lp_strict_feasible(sys);
  rep.theorem = theorem::kFiliform;
  to_g_coordinates(an, rep);
  return rep;
}

OverallDecision decide(const Analysis& an) {
  OverallDecision out;
  out.nil_class = describe(an.cls);
  if (is_unimodular(an.g)) {
    out.primary = unimodular_report();
    out.verdict = Verdict::NotExists;
    out.theorem = theorem::kUnimodular;
    return out;
  }
  DecisionReport nec = decide_general_necessary(an);
  DecisionReport suf = decide_general_sufficient(an);
  out.sub.emplace_back("necessary", nec);
  out.sub.emplace_back("sufficient", suf);
  switch (an.cls.kind) {
    case NilKind::Abelian:
      out.primary = suf;
      out.primary.theorem = theorem::kAbelian;
      break;
    case NilKind::Heisenberg:
      out.primary = decide_heisenberg(an, heisenberg_data(an));
      break;
    case NilKind::StandardFiliform:
      out.primary = decide_filiform(an, filiform_data(an));
      break;
    case NilKind::Other: {
      DecisionReport rep;
      rep.theorem = theorem::kPolicy;
      if (nec.verdict == Verdict::NotExists) {
        rep = nec;
      } else if (suf.verdict == Verdict::Exists) {
        rep = suf;
      } else {
        rep.verdict = Verdict::Unknown;
        rep.detail = "nilradical outside the covered families; necessary test " + to_string(nec.verdict) +
                     ", sufficient test " + to_string(suf.verdict);
      }
      out.primary = rep;
      break;
    }
  }
  out.verdict = out.primary.verdict;
  out.theorem = out.primary.theorem;
  return out;
}

}  // namespace solvric

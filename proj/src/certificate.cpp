#include "solvric/certificate.hpp"

namespace solvric {

Certificate make_certificate(const LieAlgebra& g, const InnerProduct& metric, std::string provenance) {
  Certificate c;
  c.metric = metric;
  c.ricci = ricci_operator(MetricLieAlgebra(g, metric));
  c.eigenvalues = symmetric_eigenvalues(c.ricci);
  c.max_eigenvalue = c.eigenvalues.size() ? c.eigenvalues.maxCoeff() : 0.0;
  c.tolerance = 1e-9 * (1.0 + c.ricci.norm());
  c.provenance = std::move(provenance);
  return c;
}

bool verify_certificate(const LieAlgebra& g, const Certificate& c) {
  Mat ric = ricci_operator(MetricLieAlgebra(g, c.metric));
  if ((ric - c.ricci).norm() > 1e-9 * (1.0 + ric.norm())) return false;
  return definiteness(ric, c.tolerance) == Definiteness::NegativeDefinite;
}

}  // namespace solvric

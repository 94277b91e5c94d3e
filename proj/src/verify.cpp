#include "noarb/verify.hpp"

#include <set>

namespace noarb {

bool certificate_well_formed(const PointSet& e, const HullCertificate& cert) {
  if (cert.indices.empty() || cert.indices.size() != cert.weights.size()) return false;
  Scalar total = 0;
  for (std::size_t i = 0; i < cert.indices.size(); ++i) {
    if (cert.indices[i] >= e.size() || cert.weights[i] < 0) return false;
    total += cert.weights[i];
  }
  return total == 1;
}

bool check_hull_certificate(const PointSet& e, const HullCertificate& cert, const RelPoint& target) {
  if (target.size() != e.dim() || !certificate_well_formed(e, cert)) return false;
  RelPoint sum(e.dim(), Scalar(0));
  for (std::size_t i = 0; i < cert.indices.size(); ++i) {
    const RelPoint& y = e[cert.indices[i]];
    for (std::size_t j = 0; j < e.dim(); ++j) sum[j] += cert.weights[i] * y[j];
  }
  return sum == target;
}

bool check_relative_interior_certificate(const PointSet& e, const HullCertificate& cert, const RelPoint& target) {
  if (!check_hull_certificate(e, cert, target)) return false;
  std::set<RelPoint> covered;
  for (std::size_t i = 0; i < cert.indices.size(); ++i) {
    if (cert.weights[i] <= 0) return false;
    covered.insert(e[cert.indices[i]]);
  }
  for (const auto& y : e.points()) {
    if (!covered.count(y)) return false;
  }
  return true;
}

bool check_separation_certificate(const PointSet& e, const SeparationCertificate& sep) {
  if (sep.h.size() != e.dim()) return false;
  bool some_positive = false;
  for (const auto& y : e.points()) {
    Scalar v = 0;
    for (std::size_t j = 0; j < e.dim(); ++j) v += sep.h[j] * y[j];
    if (sep.kind == SeparationKind::StrictSeparator && v <= 0) return false;
    if (v < 0) return false;
    some_positive = some_positive || v > 0;
  }
  return some_positive;
}

}  // namespace noarb

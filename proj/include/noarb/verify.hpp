#pragma once

// Certificate re-validation using rational arithmetic only. Nothing here
// calls the LP engine, so reports can be audited without trusting it.

#include "noarb/geometry.hpp"

namespace noarb {

/// Indices in range, weights nonnegative, weights sum to one.
bool certificate_well_formed(const PointSet& e, const HullCertificate& cert);

/// Well formed and sum_i w_i y_i == target.
bool check_hull_certificate(const PointSet& e, const HullCertificate& cert, const RelPoint& target);

/// As above, and every distinct point of `e` carries strictly positive
/// weight: the relative-interior form.
bool check_relative_interior_certificate(const PointSet& e, const HullCertificate& cert, const RelPoint& target);

/// Sign conditions of the separation kind against every point of `e`.
bool check_separation_certificate(const PointSet& e, const SeparationCertificate& sep);

}  // namespace noarb

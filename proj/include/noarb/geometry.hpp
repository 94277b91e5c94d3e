#pragma once

// Exact convex-geometry kernel over finite rational point sets.
//
// For a finite set E the convex hull co(E) is closed, so "0 lies in the
// closed convex hull" reduces to plain hull membership. Relative-interior
// membership uses the characterization
//
//   x in ri(co(E))  <=>  x = sum_i w_i y_i, sum_i w_i = 1, w_i > 0 for every
//                        distinct point y_i of E,
//
// (mix any ri representation with the barycenter of E, which lies in ri),
// decided by a single max-t LP with exact optimum.

#include <cstddef>
#include <optional>
#include <vector>

#include "noarb/scalar.hpp"

namespace noarb {

using RelPoint = Vector;

/// Nonempty finite list of points sharing one dimension. Duplicates are
/// allowed and ignored by every set-based operation.
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<RelPoint> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const RelPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<RelPoint>& points() const { return points_; }

  /// Indices of the first occurrence of each distinct point.
  std::vector<std::size_t> distinct_indices() const;

  /// Translate every point by -x0.
  PointSet shifted(const RelPoint& x0) const;

 private:
  std::size_t dim_;
  std::vector<RelPoint> points_;
};

/// Convex-combination weights over indices into a PointSet.
struct HullCertificate {
  std::vector<std::size_t> indices;
  std::vector<Scalar> weights;
};

enum class SeparationKind {
  /// h.y >= 0 for all y, h.y* > 0 for some y*.
  WeakArbitrageWitness,
  /// inf h.y > 0.
  StrictSeparator,
};

struct SeparationCertificate {
  RelPoint h;
  SeparationKind kind;
};

std::optional<HullCertificate> hull_membership(const PointSet& e, const RelPoint& x);

/// Certificate carries a strictly positive weight on every distinct point.
std::optional<HullCertificate> relative_interior_membership(const PointSet& e, const RelPoint& x);

struct DisperseVerdict {
  std::optional<SeparationCertificate> witness;  // engaged iff not disperse
  bool disperse() const { return !witness.has_value(); }
};

DisperseVerdict is_disperse(const PointSet& e);

struct ZeroNeutralVerdict {
  std::optional<HullCertificate> membership;    // engaged iff zero-neutral
  std::optional<SeparationCertificate> separator;  // strict, otherwise
  bool zero_neutral() const { return membership.has_value(); }
};

ZeroNeutralVerdict is_zero_neutral_set(const PointSet& e);

/// Reduce a valid certificate to at most dim+1 affinely independent points.
/// Certificates already that small come back unchanged.
HullCertificate caratheodory_reduce(const PointSet& e, const HullCertificate& cert);

/// x in {t a + (1-t) b : 0 < t < 1}. For a == b the segment is {a}.
bool open_segment_member(const RelPoint& x, const RelPoint& a, const RelPoint& b);
/// Same with 0 <= t <= 1.
bool closed_segment_member(const RelPoint& x, const RelPoint& a, const RelPoint& b);

}  // namespace noarb

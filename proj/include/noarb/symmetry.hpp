#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "noarb/classify.hpp"
#include "noarb/market.hpp"

namespace noarb {

struct FractionalTransform;

/// f0(s) = s[src numeraire].
struct NumeraireCoordinate {
  bool operator==(const NumeraireCoordinate&) const = default;
};

/// f0(s) = coeff * prod_i s_i^exponents_i.
struct Monomial {
  Scalar coeff{1};
  std::vector<long> exponents;
  bool operator==(const Monomial&) const = default;
};

/// f0 given pointwise; evaluating off the table is a domain error.
struct SampleTable {
  std::vector<std::pair<PricePoint, Scalar>> entries;
  bool operator==(const SampleTable&) const = default;
};

/// f0(s) = second.f0(first(s)), the multiplier of second o first.
struct Composite {
  std::shared_ptr<const FractionalTransform> first;
  std::shared_ptr<const FractionalTransform> second;
};

using Multiplier = std::variant<NumeraireCoordinate, Monomial, SampleTable, Composite>;

/// f(s) = (f0(s) / L^{dst}(s)) L s, mapping assets priced against `src`
/// to assets priced against `dst`.
struct FractionalTransform {
  Matrix L;  // (d'+1) x (d+1)
  std::size_t src_numeraire = 0;
  std::size_t dst_numeraire = 0;
  Multiplier multiplier = NumeraireCoordinate{};

  std::size_t in_dim() const { return L.empty() ? 0 : L.front().size() - 1; }
  std::size_t out_dim() const { return L.size() - 1; }
};

class DomainViolation : public std::domain_error {
 public:
  DomainViolation(std::string trajectory, std::size_t stage, const std::string& what);
  const std::string& trajectory() const { return trajectory_; }
  std::size_t stage() const { return stage_; }

 private:
  std::string trajectory_;
  std::size_t stage_;
};

/// Shape and index checks; throws std::invalid_argument.
void validate_transform(const FractionalTransform& t);

FractionalTransform identity_transform(std::size_t d, std::size_t numeraire);
/// Exchanges coordinates i and j; relative prices are then quoted against
/// the old asset j.
FractionalTransform numeraire_swap(std::size_t d, std::size_t i, std::size_t j);
/// second o first.
FractionalTransform compose(const FractionalTransform& first, const FractionalTransform& second);

/// Throws std::domain_error outside the domain.
Scalar multiplier_value(const FractionalTransform& t, const PricePoint& s);
PricePoint apply_point(const FractionalTransform& t, const PricePoint& s);

/// F(x) = (A x + b) / (B . x + c).
struct InducedMap {
  Matrix A;  // d' x d
  Vector b;
  Vector B;
  Scalar c;

  std::size_t in_dim() const { return B.size(); }
  std::size_t out_dim() const { return b.size(); }
  /// Throws std::domain_error when B . x + c <= 0.
  RelPoint operator()(const RelPoint& x) const;
  Scalar denominator(const RelPoint& x) const;
};

InducedMap induce_map(const FractionalTransform& t);

/// Every price point, including s0, is mapped; tags and horizons carry over.
/// Throws DomainViolation naming the first offending trajectory and stage.
TrajectorySet apply_transform(const FractionalTransform& t, const TrajectorySet& ts);

/// A map given by finitely many (s, f(s)) pairs.
struct SampledMap {
  std::vector<std::pair<PricePoint, PricePoint>> entries;
  std::optional<PricePoint> lookup(const PricePoint& s) const;
};

/// For every (s, lambda): f(lambda s) = mu f(s) with mu > 0.
bool verify_scalar_condition(const FractionalTransform& t, const std::vector<std::pair<PricePoint, Scalar>>& samples);
/// Pairs missing from the table count as failures.
bool verify_scalar_condition(const SampledMap& f, const std::vector<std::pair<PricePoint, Scalar>>& samples);

struct SegmentSample {
  Vector a;
  Vector b;
  std::vector<Scalar> params;  // each in (0, 1)
};

using PointMap = std::function<Vector(const Vector&)>;

/// F(t a + (1-t) b) lies in the open segment (F(a), F(b)) for every sample.
bool check_strict_icp(const PointMap& f, const std::vector<SegmentSample>& segments);
bool check_strict_icp(const InducedMap& f, const std::vector<SegmentSample>& segments);

struct ImageRank {
  std::size_t rank = 0;
  /// rank >= 3: the image of f is not inside a 2-dimensional subspace.
  bool spans_beyond_plane = false;
};

ImageRank image_rank(const FractionalTransform& t);

struct NodeImplication {
  std::size_t source_node = 0;
  std::size_t target_node = 0;
  VerdictKind before = VerdictKind::ArbitrageFree;
  VerdictKind after = VerdictKind::ArbitrageFree;
  bool holds = true;
};

struct SymmetryReport {
  MarketVerdict before;
  MarketVerdict after;
  TrajectorySet transformed;
  std::vector<NodeImplication> nodes;
  std::vector<std::size_t> violations;  // indices into `nodes`
  ImageRank rank;

  bool holds() const { return violations.empty(); }
};

/// Arbitrage-free stays arbitrage-free and 0-neutral stays 0-neutral at
/// every node (S, k) -> (f(S), k).
SymmetryReport verify_symmetry_on_market(const FractionalTransform& t, const Market& m);

}  // namespace noarb

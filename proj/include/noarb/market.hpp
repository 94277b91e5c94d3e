#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "noarb/geometry.hpp"
#include "noarb/scalar.hpp"

namespace noarb {

/// Absolute prices of the d+1 assets in a common currency.
using PricePoint = Vector;

struct Trajectory {
  std::string id;
  std::vector<PricePoint> prices;  // stages 0..len-1
  std::vector<std::string> tags;   // one per stage
  std::size_t horizon = 1;         // M(S); 0 < horizon <= len-1

  bool operator==(const Trajectory&) const = default;
};

struct TrajectorySet {
  std::size_t dim = 1;  // d: number of non-numeraire assets
  PricePoint s0;
  std::string w0;
  std::vector<Trajectory> trajectories;
  std::size_t numeraire = 0;

  bool operator==(const TrajectorySet&) const = default;
};

/// Relative prices s[j] / s[nu] for j != nu, ascending j.
RelPoint perspective(const PricePoint& s, std::size_t numeraire);

struct Violation {
  std::string trajectory;  // empty for set-level problems
  std::optional<std::size_t> stage;
  std::string what;
};

std::string describe(const Violation& v);

/// Every violated invariant; empty iff the set is a valid finite market.
std::vector<Violation> validate(const TrajectorySet& ts);

class InvalidMarket : public std::runtime_error {
 public:
  explicit InvalidMarket(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// A prefix-equivalence class (S, k) with k < M(S).
struct Node {
  std::size_t id = 0;
  std::size_t stage = 0;
  std::size_t representative = 0;    // trajectory index
  std::vector<std::size_t> members;  // conditioned set, ascending indices
  std::optional<std::size_t> parent;
};

/// External node reference: a trajectory id and a stage.
struct NodeRef {
  std::string trajectory;
  std::size_t stage = 0;
};

/// Validated trajectory set with its node index. Nodes are ordered by stage,
/// then by first member, which makes ids deterministic.
class Market {
 public:
  explicit Market(TrajectorySet ts);  // throws InvalidMarket

  const TrajectorySet& set() const { return ts_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  const Trajectory& trajectory(std::size_t index) const { return ts_.trajectories.at(index); }
  std::size_t trajectory_count() const { return ts_.trajectories.size(); }
  std::size_t dim() const { return ts_.dim; }

  /// Node id for (trajectory, stage), absent when stage >= M(trajectory).
  std::optional<std::size_t> node_of(std::size_t trajectory, std::size_t stage) const;
  std::size_t find_node(const NodeRef& ref) const;  // throws std::out_of_range
  std::size_t trajectory_index(const std::string& id) const;

  /// X(S_k) of trajectory `index`.
  RelPoint relative(std::size_t index, std::size_t stage) const;

  NodeRef ref(std::size_t node_id) const;

 private:
  TrajectorySet ts_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::size_t>> node_at_;  // [trajectory][stage < M]
  std::vector<std::vector<RelPoint>> relative_;
};

/// Trajectories matching the node's stage-0..k prefix (prices and tags) with
/// M > k, computed directly from the definition.
std::vector<std::string> conditioned_set(const TrajectorySet& ts, const NodeRef& node);

/// Deduplicated one-step relative increments of the conditioned set.
PointSet increment_set(const Market& m, std::size_t node_id);
PointSet increment_set(const TrajectorySet& ts, std::span<const std::size_t> members, std::size_t stage);

/// Absolute stage-(k+1) prices of the conditioned set, one per member.
std::vector<PricePoint> reachable_prices(const Market& m, std::size_t node_id);

}  // namespace noarb

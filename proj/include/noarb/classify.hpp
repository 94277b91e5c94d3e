#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "noarb/geometry.hpp"
#include "noarb/market.hpp"

namespace noarb {

enum class VerdictKind { ArbitrageFree, ZeroNeutralOnly, ArbitrageNode };

const char* to_string(VerdictKind k);

/// Per-node verdict with certificates against `increments`.
///
///   ArbitrageFree    membership (strictly positive weights, 0 in ri)
///   ZeroNeutralOnly  membership and a weak-arbitrage separator
///   ArbitrageNode    strict separator
struct NodeVerdict {
  std::size_t node = 0;
  VerdictKind kind = VerdictKind::ArbitrageFree;
  std::optional<HullCertificate> membership;
  std::optional<SeparationCertificate> separator;
  PointSet increments;

  bool zero_neutral() const { return kind != VerdictKind::ArbitrageNode; }
};

/// Decides the node on its increments at 0 and again on the reachable
/// relative prices at X(S_k); throws std::logic_error if the routes disagree
/// or a certificate fails to re-validate.
NodeVerdict classify_node(const Market& m, std::size_t node_id);

/// The increment-only route, on an arbitrary point set.
NodeVerdict classify_increments(PointSet increments, std::size_t node_id = 0);

enum class MarketKind { LocallyArbitrageFree, LocallyZeroNeutral, HasArbitrageNodes };

const char* to_string(MarketKind k);

struct MarketVerdict {
  MarketKind kind = MarketKind::LocallyArbitrageFree;
  std::vector<NodeVerdict> nodes;  // indexed by node id
  std::vector<std::size_t> arbitrage_nodes;
  std::vector<std::size_t> zero_neutral_only;

  bool arbitrage_free() const { return kind == MarketKind::LocallyArbitrageFree; }
  bool zero_neutral() const { return kind != MarketKind::HasArbitrageNodes; }
};

MarketVerdict aggregate(std::vector<NodeVerdict> nodes);

/// Reference implementation: nodes in id order on the calling thread.
std::vector<NodeVerdict> classify_nodes_serial(const Market& m);
/// OpenMP over nodes; identical output to the serial path.
std::vector<NodeVerdict> classify_nodes_parallel(const Market& m);

MarketVerdict classify_market(const Market& m);
MarketVerdict classify_market_serial(const Market& m);

/// Thread count from NOARB_THREADS, or 0 when unset or unparsable.
int thread_cap();

}  // namespace noarb

#include "noarb/classify.hpp"

#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "noarb/verify.hpp"

namespace noarb {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ArbitrageFree: return "ArbitrageFree";
    case VerdictKind::ZeroNeutralOnly: return "ZeroNeutralOnly";
    case VerdictKind::ArbitrageNode: return "ArbitrageNode";
  }
  return "?";
}

const char* to_string(MarketKind k) {
  switch (k) {
    case MarketKind::LocallyArbitrageFree: return "LocallyArbitrageFree";
    case MarketKind::LocallyZeroNeutral: return "LocallyZeroNeutral";
    case MarketKind::HasArbitrageNodes: return "HasArbitrageNodes";
  }
  return "?";
}

NodeVerdict classify_increments(PointSet increments, std::size_t node_id) {
  const RelPoint origin(increments.dim(), Scalar(0));
  NodeVerdict v{node_id, VerdictKind::ArbitrageFree, std::nullopt, std::nullopt, std::move(increments)};
  const PointSet& e = v.increments;
  if (auto ri = relative_interior_membership(e, origin)) {
    v.membership = std::move(ri);
  } else {
    auto zn = is_zero_neutral_set(e);
    if (zn.zero_neutral()) {
      v.kind = VerdictKind::ZeroNeutralOnly;
      v.membership = std::move(zn.membership);
      auto dv = is_disperse(e);
      if (dv.disperse()) throw std::logic_error("0 outside ri but increments reported disperse");
      v.separator = std::move(dv.witness);
    } else {
      v.kind = VerdictKind::ArbitrageNode;
      v.separator = std::move(zn.separator);
    }
  }

  bool ok = true;
  switch (v.kind) {
    case VerdictKind::ArbitrageFree:
      ok = check_relative_interior_certificate(e, *v.membership, origin);
      break;
    case VerdictKind::ZeroNeutralOnly:
      ok = check_hull_certificate(e, *v.membership, origin) && check_separation_certificate(e, *v.separator);
      break;
    case VerdictKind::ArbitrageNode:
      ok = check_separation_certificate(e, *v.separator);
      break;
  }
  if (!ok) throw std::logic_error("node " + std::to_string(node_id) + ": certificate failed re-validation");
  return v;
}

NodeVerdict classify_node(const Market& m, std::size_t node_id) {
  NodeVerdict v = classify_increments(increment_set(m, node_id), node_id);

  const Node& n = m.node(node_id);
  std::vector<RelPoint> reach;
  reach.reserve(n.members.size());
  for (std::size_t i : n.members) reach.push_back(m.relative(i, n.stage + 1));
  const PointSet sigma(m.dim(), std::move(reach));
  const RelPoint here = m.relative(n.representative, n.stage);
  VerdictKind other = VerdictKind::ArbitrageNode;
  if (relative_interior_membership(sigma, here)) {
    other = VerdictKind::ArbitrageFree;
  } else if (hull_membership(sigma, here)) {
    other = VerdictKind::ZeroNeutralOnly;
  }
  if (other != v.kind) {
    throw std::logic_error("node " + std::to_string(node_id) + ": increment route says " + to_string(v.kind) +
                           ", reachable-price route says " + to_string(other));
  }
  return v;
}

MarketVerdict aggregate(std::vector<NodeVerdict> nodes) {
  MarketVerdict mv;
  for (const auto& v : nodes) {
    if (v.kind == VerdictKind::ArbitrageNode) mv.arbitrage_nodes.push_back(v.node);
    if (v.kind == VerdictKind::ZeroNeutralOnly) mv.zero_neutral_only.push_back(v.node);
  }
  if (!mv.arbitrage_nodes.empty()) {
    mv.kind = MarketKind::HasArbitrageNodes;
  } else if (!mv.zero_neutral_only.empty()) {
    mv.kind = MarketKind::LocallyZeroNeutral;
  }
  mv.nodes = std::move(nodes);
  return mv;
}

std::vector<NodeVerdict> classify_nodes_serial(const Market& m) {
  std::vector<NodeVerdict> out;
  out.reserve(m.nodes().size());
  for (std::size_t id = 0; id < m.nodes().size(); ++id) out.push_back(classify_node(m, id));
  return out;
}

std::vector<NodeVerdict> classify_nodes_parallel(const Market& m) {
  const long count = static_cast<long>(m.nodes().size());
  std::vector<std::optional<NodeVerdict>> slots(m.nodes().size());
  std::exception_ptr failure;
  const int cap = thread_cap();
  const int threads = cap > 0 ? cap : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long id = 0; id < count; ++id) {
    try {
      slots[id] = classify_node(m, static_cast<std::size_t>(id));
    } catch (...) {
#pragma omp critical(noarb_classify_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<NodeVerdict> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

MarketVerdict classify_market(const Market& m) { return aggregate(classify_nodes_parallel(m)); }

MarketVerdict classify_market_serial(const Market& m) { return aggregate(classify_nodes_serial(m)); }

int thread_cap() {
  const char* env = std::getenv("NOARB_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0 || v > 4096) return 0;
  return static_cast<int>(v);
}

}  // namespace noarb

#include "noarb/market.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "noarb/linalg.hpp"

namespace noarb {

RelPoint perspective(const PricePoint& s, std::size_t numeraire) {
  if (numeraire >= s.size()) throw std::invalid_argument("numeraire index out of range");
  if (s[numeraire] <= 0) throw std::domain_error("non-positive numeraire coordinate");
  RelPoint x;
  x.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j != numeraire) x.push_back(s[j] / s[numeraire]);
  }
  return x;
}

std::string describe(const Violation& v) {
  std::ostringstream os;
  if (!v.trajectory.empty()) os << "trajectory '" << v.trajectory << "'";
  if (v.stage) os << (v.trajectory.empty() ? "" : " ") << "stage " << *v.stage;
  if (!v.trajectory.empty() || v.stage) os << ": ";
  os << v.what;
  return os.str();
}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string out = "invalid trajectory set";
  for (const auto& v : vs) out += "\n  " + describe(v);
  return out;
}

// Prefix classes over every stored stage, ignoring horizons: cls[t][k] is the
// class of trajectory t's stage-0..k prefix.
std::vector<std::vector<std::size_t>> prefix_classes(const TrajectorySet& ts) {
  std::vector<std::vector<std::size_t>> cls(ts.trajectories.size());
  // Keyed by (parent class, price, tag).
  std::map<std::tuple<std::size_t, PricePoint, std::string>, std::size_t> index;
  std::size_t next = 0;
  std::size_t longest = 0;
  for (const auto& t : ts.trajectories) longest = std::max(longest, t.prices.size());
  for (std::size_t k = 0; k < longest; ++k) {
    for (std::size_t i = 0; i < ts.trajectories.size(); ++i) {
      const auto& t = ts.trajectories[i];
      if (k >= t.prices.size()) continue;
      const std::size_t parent = k == 0 ? 0 : cls[i][k - 1];
      auto key = std::make_tuple(parent, t.prices[k], t.tags[k]);
      auto it = index.find(key);
      if (it == index.end()) it = index.emplace(std::move(key), next++).first;
      cls[i].push_back(it->second);
    }
  }
  return cls;
}

}  // namespace

std::vector<Violation> validate(const TrajectorySet& ts) {
  std::vector<Violation> out;
  if (ts.dim == 0) out.push_back({"", std::nullopt, "dimension must be at least 1"});
  if (ts.numeraire > ts.dim) out.push_back({"", std::nullopt, "numeraire index out of range"});
  if (ts.s0.size() != ts.dim + 1) out.push_back({"", std::nullopt, "s0 has wrong length"});
  if (ts.trajectories.empty()) out.push_back({"", std::nullopt, "no trajectories"});
  if (!out.empty()) return out;

  std::set<std::string> ids;
  bool shaped = true;
  for (const auto& t : ts.trajectories) {
    if (t.id.empty()) out.push_back({"", std::nullopt, "empty trajectory id"});
    if (!ids.insert(t.id).second) out.push_back({t.id, std::nullopt, "duplicate trajectory id"});
    if (t.prices.empty()) {
      out.push_back({t.id, std::nullopt, "no price stages"});
      shaped = false;
      continue;
    }
    if (t.tags.size() != t.prices.size()) {
      out.push_back({t.id, std::nullopt, "tag count differs from stage count"});
      shaped = false;
    }
    if (t.horizon == 0 || t.horizon > t.prices.size() - 1) {
      out.push_back({t.id, std::nullopt, "horizon must satisfy 0 < m <= len-1"});
    }
    for (std::size_t k = 0; k < t.prices.size(); ++k) {
      if (t.prices[k].size() != ts.dim + 1) {
        out.push_back({t.id, k, "price point has wrong length"});
        shaped = false;
        continue;
      }
      if (t.prices[k][ts.numeraire] <= 0) out.push_back({t.id, k, "non-positive numeraire"});
    }
    if (t.prices[0] != ts.s0) out.push_back({t.id, 0, "initial price differs from s0"});
    if (!t.tags.empty() && t.tags[0] != ts.w0) out.push_back({t.id, 0, "initial tag differs from w0"});
  }
  if (!shaped) return out;

  // Agreement through stage M(S) must force equal horizons.
  const auto cls = prefix_classes(ts);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> owner;  // (stage, class) -> trajectory
  std::set<std::size_t> stages;
  for (std::size_t i = 0; i < ts.trajectories.size(); ++i) {
    const std::size_t m = ts.trajectories[i].horizon;
    if (m == 0 || m >= cls[i].size()) continue;
    owner.emplace(std::make_pair(m, cls[i][m]), i);
    stages.insert(m);
  }
  for (std::size_t i = 0; i < ts.trajectories.size(); ++i) {
    for (std::size_t stage : stages) {
      if (stage >= cls[i].size()) continue;
      const auto it = owner.find({stage, cls[i][stage]});
      if (it == owner.end()) continue;
      const std::size_t j = it->second;
      if (ts.trajectories[i].horizon != ts.trajectories[j].horizon) {
        out.push_back({ts.trajectories[i].id, stage,
                       "stopping-time property: agrees with '" + ts.trajectories[j].id + "' through stage " +
                           std::to_string(stage) + " but has a different horizon"});
        break;
      }
    }
  }
  return out;
}

InvalidMarket::InvalidMarket(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

Market::Market(TrajectorySet ts) : ts_(std::move(ts)) {
  auto problems = validate(ts_);
  if (!problems.empty()) throw InvalidMarket(std::move(problems));

  const std::size_t n = ts_.trajectories.size();
  relative_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : ts_.trajectories[i].prices) relative_[i].push_back(perspective(s, ts_.numeraire));
  }

  const auto cls = prefix_classes(ts_);
  node_at_.resize(n);
  std::size_t max_h = 0;
  for (const auto& t : ts_.trajectories) max_h = std::max(max_h, t.horizon);
  for (std::size_t k = 0; k < max_h; ++k) {
    std::map<std::size_t, std::size_t> by_class;
    for (std::size_t i = 0; i < n; ++i) {
      if (ts_.trajectories[i].horizon <= k) continue;
      auto [it, fresh] = by_class.emplace(cls[i][k], nodes_.size());
      if (fresh) {
        Node node;
        node.id = nodes_.size();
        node.stage = k;
        node.representative = i;
        if (k > 0) node.parent = node_at_[i][k - 1];
        nodes_.push_back(std::move(node));
      }
      nodes_[it->second].members.push_back(i);
      node_at_[i].push_back(it->second);
    }
  }
}

std::optional<std::size_t> Market::node_of(std::size_t trajectory, std::size_t stage) const {
  const auto& row = node_at_.at(trajectory);
  if (stage >= row.size()) return std::nullopt;
  return row[stage];
}

std::size_t Market::trajectory_index(const std::string& id) const {
  for (std::size_t i = 0; i < ts_.trajectories.size(); ++i) {
    if (ts_.trajectories[i].id == id) return i;
  }
  throw std::out_of_range("unknown trajectory '" + id + "'");
}

std::size_t Market::find_node(const NodeRef& ref) const {
  const auto id = node_of(trajectory_index(ref.trajectory), ref.stage);
  if (!id) throw std::out_of_range("no node at stage " + std::to_string(ref.stage) + " of '" + ref.trajectory + "'");
  return *id;
}

RelPoint Market::relative(std::size_t index, std::size_t stage) const { return relative_.at(index).at(stage); }

NodeRef Market::ref(std::size_t node_id) const {
  const Node& n = node(node_id);
  return {ts_.trajectories[n.representative].id, n.stage};
}

std::vector<std::string> conditioned_set(const TrajectorySet& ts, const NodeRef& node) {
  const Trajectory* rep = nullptr;
  for (const auto& t : ts.trajectories) {
    if (t.id == node.trajectory) rep = &t;
  }
  if (!rep) throw std::out_of_range("unknown trajectory '" + node.trajectory + "'");
  if (node.stage >= rep->horizon) throw std::out_of_range("stage is not below the trajectory horizon");

  std::vector<std::string> out;
  for (const auto& t : ts.trajectories) {
    if (t.horizon <= node.stage || t.prices.size() <= node.stage) continue;
    bool same = true;
    for (std::size_t i = 0; i <= node.stage && same; ++i) {
      same = t.prices[i] == rep->prices[i] && t.tags[i] == rep->tags[i];
    }
    if (same) out.push_back(t.id);
  }
  return out;
}

PointSet increment_set(const TrajectorySet& ts, std::span<const std::size_t> members, std::size_t stage) {
  if (members.empty()) throw std::invalid_argument("empty conditioned set");
  std::vector<RelPoint> pts;
  std::set<RelPoint> seen;
  for (std::size_t i : members) {
    const auto& t = ts.trajectories.at(i);
    RelPoint d = sub(perspective(t.prices.at(stage + 1), ts.numeraire), perspective(t.prices.at(stage), ts.numeraire));
    if (seen.insert(d).second) pts.push_back(std::move(d));
  }
  return PointSet(ts.dim, std::move(pts));
}

PointSet increment_set(const Market& m, std::size_t node_id) {
  const Node& n = m.node(node_id);
  std::vector<RelPoint> pts;
  std::set<RelPoint> seen;
  for (std::size_t i : n.members) {
    RelPoint d = sub(m.relative(i, n.stage + 1), m.relative(i, n.stage));
    if (seen.insert(d).second) pts.push_back(std::move(d));
  }
  return PointSet(m.dim(), std::move(pts));
}

std::vector<PricePoint> reachable_prices(const Market& m, std::size_t node_id) {
  const Node& n = m.node(node_id);
  std::vector<PricePoint> out;
  out.reserve(n.members.size());
  for (std::size_t i : n.members) out.push_back(m.trajectory(i).prices.at(n.stage + 1));
  return out;
}

}  // namespace noarb

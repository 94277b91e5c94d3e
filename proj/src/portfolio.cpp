#include "noarb/portfolio.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "noarb/linalg.hpp"

namespace noarb {

namespace {

void require_trajectory(const Market& m, std::size_t t) {
  if (t >= m.trajectory_count()) throw std::out_of_range("trajectory index out of range");
}

// Per-stage H, H0 and V along one trajectory, stages 0..len-1.
struct Path {
  std::vector<Vector> h;
  std::vector<Scalar> bank;
};

Path trace(const Market& m, const Portfolio& p, std::size_t t) {
  const std::size_t len = m.trajectory(t).prices.size();
  Path path;
  path.h.reserve(len);
  for (std::size_t k = 0; k < len; ++k) path.h.push_back(effective_holdings(m, p, t, k));
  if (p.bank) {
    const auto& row = p.bank->at(t);
    if (row.size() != len) throw std::invalid_argument("bank override has wrong length");
    path.bank = row;
    return path;
  }
  path.bank.resize(len);
  path.bank[0] = p.initial_value - dot(path.h[0], m.relative(t, 0));
  for (std::size_t k = 1; k < len; ++k) {
    path.bank[k] = path.bank[k - 1] - dot(sub(path.h[k], path.h[k - 1]), m.relative(t, k));
  }
  return path;
}

}  // namespace

void validate_portfolio(const Market& m, const Portfolio& p) {
  if (p.holdings.size() != m.nodes().size()) throw std::invalid_argument("holdings missing for some node");
  for (const auto& h : p.holdings) {
    if (h.size() != m.dim()) throw std::invalid_argument("holdings vector has wrong dimension");
  }
  if (p.liquidation.size() != m.trajectory_count()) throw std::invalid_argument("liquidation stage missing for some trajectory");
  if (p.bound) {
    for (std::size_t n : p.liquidation) {
      if (n > *p.bound) throw std::invalid_argument("liquidation stage exceeds the declared bound");
    }
  }
  for (const auto& node : m.nodes()) {
    const bool active = p.liquidation[node.members.front()] > node.stage;
    for (std::size_t i : node.members) {
      if ((p.liquidation[i] > node.stage) != active) {
        throw std::invalid_argument("liquidation rule anticipates the future at node " + std::to_string(node.id));
      }
    }
  }
  if (p.bank) {
    if (p.bank->size() != m.trajectory_count()) throw std::invalid_argument("bank override missing for some trajectory");
  }
}

Vector effective_holdings(const Market& m, const Portfolio& p, std::size_t trajectory, std::size_t stage) {
  require_trajectory(m, trajectory);
  if (stage >= p.liquidation.at(trajectory)) return zeros(m.dim());
  const auto node = m.node_of(trajectory, stage);
  if (!node) return zeros(m.dim());
  return p.holdings.at(*node);
}

Portfolio null_portfolio(const Market& m) { return constant_portfolio(m, zeros(m.dim()), Scalar(0)); }

Portfolio constant_portfolio(const Market& m, const Vector& h, const Scalar& v0) {
  if (h.size() != m.dim()) throw std::invalid_argument("holdings vector has wrong dimension");
  Portfolio p;
  p.initial_value = v0;
  p.holdings.assign(m.nodes().size(), h);
  for (const auto& t : m.set().trajectories) p.liquidation.push_back(t.horizon);
  return p;
}

Portfolio restricted_portfolio(const Market& m, std::size_t node_id, const Vector& xi, const Scalar& v0) {
  const Node& n = m.node(node_id);
  if (xi.size() != m.dim()) throw std::invalid_argument("holdings vector has wrong dimension");
  Portfolio p;
  p.initial_value = v0;
  p.holdings.assign(m.nodes().size(), zeros(m.dim()));
  p.holdings[node_id] = xi;
  p.liquidation.assign(m.trajectory_count(), n.stage + 1);
  return p;
}

Portfolio sum(const Market& m, const Portfolio& a, const Portfolio& b) {
  validate_portfolio(m, a);
  validate_portfolio(m, b);
  Portfolio p;
  p.initial_value = a.initial_value + b.initial_value;
  for (std::size_t i = 0; i < m.trajectory_count(); ++i) {
    p.liquidation.push_back(std::max(a.liquidation[i], b.liquidation[i]));
  }
  p.holdings.reserve(m.nodes().size());
  for (const auto& node : m.nodes()) {
    const std::size_t t = node.members.front();
    p.holdings.push_back(add(effective_holdings(m, a, t, node.stage), effective_holdings(m, b, t, node.stage)));
  }
  if (a.bound && b.bound) p.bound = std::max(*a.bound, *b.bound);
  if (a.bank || b.bank) {
    std::vector<Vector> bank;
    for (std::size_t t = 0; t < m.trajectory_count(); ++t) {
      bank.push_back(add(trace(m, a, t).bank, trace(m, b, t).bank));
    }
    p.bank = std::move(bank);
  }
  return p;
}

std::vector<Scalar> reconstruct_bank_component(const Market& m, const Portfolio& p, std::size_t trajectory) {
  validate_portfolio(m, p);
  require_trajectory(m, trajectory);
  return trace(m, p, trajectory).bank;
}

std::size_t terminal_stage(const Market& m, const Portfolio& p, std::size_t trajectory) {
  require_trajectory(m, trajectory);
  return std::min(p.liquidation.at(trajectory), m.trajectory(trajectory).prices.size() - 1);
}

Scalar gains(const Market& m, const Portfolio& p, std::size_t trajectory, std::size_t k) {
  require_trajectory(m, trajectory);
  if (k >= m.trajectory(trajectory).prices.size()) throw std::out_of_range("stage out of range");
  Scalar g = 0;
  for (std::size_t i = 0; i < k; ++i) {
    g += dot(effective_holdings(m, p, trajectory, i), sub(m.relative(trajectory, i + 1), m.relative(trajectory, i)));
  }
  return g;
}

Scalar value(const Market& m, const Portfolio& p, std::size_t trajectory, std::size_t k) {
  validate_portfolio(m, p);
  require_trajectory(m, trajectory);
  if (k >= m.trajectory(trajectory).prices.size()) throw std::out_of_range("stage out of range");
  const Path path = trace(m, p, trajectory);
  return path.bank[k] + dot(path.h[k], m.relative(trajectory, k));
}

bool check_self_financing(const Market& m, const Portfolio& p) {
  validate_portfolio(m, p);
  for (std::size_t t = 0; t < m.trajectory_count(); ++t) {
    const Path path = trace(m, p, t);
    const std::size_t last = terminal_stage(m, p, t);
    Scalar g = 0;
    for (std::size_t k = 0; k <= last; ++k) {
      if (k > 0) g += dot(path.h[k - 1], sub(m.relative(t, k), m.relative(t, k - 1)));
      if (path.bank[k] + dot(path.h[k], m.relative(t, k)) != p.initial_value + g) return false;
    }
  }
  return true;
}

std::vector<Scalar> terminal_gains(const Market& m, const Portfolio& p) {
  validate_portfolio(m, p);
  std::vector<Scalar> out;
  out.reserve(m.trajectory_count());
  for (std::size_t t = 0; t < m.trajectory_count(); ++t) {
    const Path path = trace(m, p, t);
    const std::size_t n = terminal_stage(m, p, t);
    out.push_back(path.bank[n] + dot(path.h[n], m.relative(t, n)) - p.initial_value);
  }
  return out;
}

std::optional<std::size_t> arbitrage_trajectory(const Market& m, const Portfolio& p) {
  const auto g = terminal_gains(m, p);
  std::optional<std::size_t> strict;
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (g[t] < 0) return std::nullopt;
    if (g[t] > 0 && !strict) strict = t;
  }
  return strict;
}

std::optional<ArbitrageRecord> find_arbitrage(const Market& m, const MarketVerdict& verdict) {
  for (const auto& v : verdict.nodes) {
    if (v.kind == VerdictKind::ArbitrageFree) continue;
    ArbitrageRecord rec;
    rec.node = v.node;
    rec.witness = *v.separator;
    rec.portfolio = restricted_portfolio(m, v.node, rec.witness.h, Scalar(0));
    rec.terminal_gain = terminal_gains(m, rec.portfolio);
    const auto strict = arbitrage_trajectory(m, rec.portfolio);
    if (!strict || !check_self_financing(m, rec.portfolio)) {
      throw std::logic_error("witness at node " + std::to_string(v.node) + " does not yield an arbitrage");
    }
    rec.strict_trajectory = *strict;
    return rec;
  }
  return std::nullopt;
}

std::optional<ArbitrageRecord> find_arbitrage(const Market& m) { return find_arbitrage(m, classify_market(m)); }

AuditReport portfolio_audit(const Market& m, const std::vector<Portfolio>& family) {
  AuditReport report;
  report.sup_inf = 0;  // the null portfolio is always admissible
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!check_self_financing(m, family[i])) {
      throw std::invalid_argument("portfolio " + std::to_string(i) + " is not self-financing");
    }
    const auto g = terminal_gains(m, family[i]);
    PortfolioAudit a;
    a.min_gain = *std::min_element(g.begin(), g.end());
    a.max_gain = *std::max_element(g.begin(), g.end());
    a.arbitrage = a.min_gain >= 0 && a.max_gain > 0;
    if (a.arbitrage) {
      a.strict_trajectory = static_cast<std::size_t>(std::find_if(g.begin(), g.end(), [](const Scalar& x) { return x > 0; }) - g.begin());
      report.flagged.push_back(i);
    }
    report.sup_inf = std::max(report.sup_inf, a.min_gain);
    report.entries.push_back(std::move(a));
  }
  return report;
}

std::size_t epsilon_witness(const Market& m, const MarketVerdict& verdict, const Portfolio& p, const Scalar& eps) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
  if (!verdict.zero_neutral()) throw std::domain_error("market is not locally 0-neutral");
  if (!check_self_financing(m, p)) throw std::domain_error("portfolio is not self-financing");
  const auto g = terminal_gains(m, p);
  const auto best = static_cast<std::size_t>(std::min_element(g.begin(), g.end()) - g.begin());
  if (g[best] >= eps) throw std::domain_error("no trajectory with gain below epsilon");
  return best;
}

std::size_t epsilon_witness(const Market& m, const Portfolio& p, const Scalar& eps) {
  return epsilon_witness(m, classify_market(m), p, eps);
}

}  // namespace noarb

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "noarb/classify.hpp"
#include "noarb/market.hpp"

namespace noarb {

/// Self-financing strategy on a Market. Risky holdings live on nodes, so
/// non-anticipativity holds by construction; the bank component H0 is
/// reconstructed from the initial value unless `bank` overrides it.
struct Portfolio {
  Scalar initial_value;
  std::vector<Vector> holdings;          // per node id, length d
  std::vector<std::size_t> liquidation;  // N per trajectory index
  std::optional<std::size_t> bound;      // declared n with N <= n
  /// Explicit H0 per [trajectory][stage]; only for modelling cash injections.
  std::optional<std::vector<Vector>> bank;
};

/// Throws std::invalid_argument on shape errors,
/// a liquidation rule that looks ahead (N > k must be constant on every
/// node), or N above the declared bound.
void validate_portfolio(const Market& m, const Portfolio& p);

/// Holdings actually carried at (trajectory, stage): zero from N onward and
/// at stages that are not nodes.
Vector effective_holdings(const Market& m, const Portfolio& p, std::size_t trajectory, std::size_t stage);

Portfolio null_portfolio(const Market& m);
/// Holds `h` at every node, liquidated at the horizon.
Portfolio constant_portfolio(const Market& m, const Vector& h, const Scalar& v0);
/// Holds `xi` on one node only; N = k+1 on every trajectory.
Portfolio restricted_portfolio(const Market& m, std::size_t node_id, const Vector& xi, const Scalar& v0);
Portfolio sum(const Market& m, const Portfolio& a, const Portfolio& b);

/// H0 at stages 0..len-1 of one trajectory.
std::vector<Scalar> reconstruct_bank_component(const Market& m, const Portfolio& p, std::size_t trajectory);

/// Last stage the value is read at: min(N, len-1).
std::size_t terminal_stage(const Market& m, const Portfolio& p, std::size_t trajectory);

/// sum_{i<k} H_i . (X_{i+1} - X_i).
Scalar gains(const Market& m, const Portfolio& p, std::size_t trajectory, std::size_t k);
/// H0_k + H_k . X_k.
Scalar value(const Market& m, const Portfolio& p, std::size_t trajectory, std::size_t k);

/// V_k == V0 + G_k at every k <= N on every trajectory.
bool check_self_financing(const Market& m, const Portfolio& p);

/// V_N - V0 per trajectory.
std::vector<Scalar> terminal_gains(const Market& m, const Portfolio& p);

/// Index of a trajectory with strict gain when p is an arbitrage
/// opportunity (V_N >= V0 everywhere, > somewhere).
std::optional<std::size_t> arbitrage_trajectory(const Market& m, const Portfolio& p);

struct ArbitrageRecord {
  std::size_t node = 0;
  SeparationCertificate witness;
  Portfolio portfolio;
  std::vector<Scalar> terminal_gain;  // per trajectory
  std::size_t strict_trajectory = 0;
};

std::optional<ArbitrageRecord> find_arbitrage(const Market& m, const MarketVerdict& verdict);
std::optional<ArbitrageRecord> find_arbitrage(const Market& m);

struct PortfolioAudit {
  Scalar min_gain;
  Scalar max_gain;
  bool arbitrage = false;
  std::optional<std::size_t> strict_trajectory;
};

struct AuditReport {
  std::vector<PortfolioAudit> entries;
  std::vector<std::size_t> flagged;
  /// sup over the family and the null portfolio of inf terminal gain.
  Scalar sup_inf;
};

/// Throws std::invalid_argument if any member is not self-financing.
AuditReport portfolio_audit(const Market& m, const std::vector<Portfolio>& family);

/// Trajectory with the least terminal gain; throws std::domain_error unless
/// the market is locally 0-neutral and that gain is below eps.
std::size_t epsilon_witness(const Market& m, const MarketVerdict& verdict, const Portfolio& p, const Scalar& eps);
std::size_t epsilon_witness(const Market& m, const Portfolio& p, const Scalar& eps);

}  // namespace noarb

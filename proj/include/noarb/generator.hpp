#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "noarb/classify.hpp"
#include "noarb/market.hpp"

namespace noarb {

/// Seeded source of exact rationals. Only the raw engine output is used, so
/// a seed yields the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer on [lo, hi].
  long long between(long long lo, long long hi);
  bool coin() { return below(2) == 1; }
  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Scalar rational(long long max_num, long long max_den);
  /// lo + (hi - lo) k / steps for a uniform k in [0, steps].
  Scalar in_range(const Scalar& lo, const Scalar& hi, long long steps = 64);

 private:
  std::mt19937_64 engine_;
};

enum class Regime { ArbitrageFree, ZeroNeutralOnly, PlantArbitrage };

const char* to_string(Regime r);
Regime parse_regime(const std::string& text);

struct GeneratorParams {
  std::size_t depth = 2;
  std::size_t branching = 2;
  std::size_t dim = 1;
  std::uint64_t seed = 1;
  Regime regime = Regime::ArbitrageFree;
  std::size_t plant = 1;  // arbitrage nodes for PlantArbitrage
  std::size_t numeraire = 0;
  Scalar price_lo{1, 2};
  Scalar price_hi{2};
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate_params(const GeneratorParams& p);

/// Full tree of the given depth and branching. Each internal node gets
/// children whose relative-price increments realize the regime; every
/// coordinate of every price stays positive.
TrajectorySet generate_market(const GeneratorParams& p);

/// The regime's verdict: all nodes arbitrage-free; 0-neutral with at least
/// one node that is not arbitrage-free; exactly `plant` arbitrage nodes.
bool regime_satisfied(const GeneratorParams& p, const MarketVerdict& v);

}  // namespace noarb

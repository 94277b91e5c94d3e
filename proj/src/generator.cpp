#include "noarb/generator.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "noarb/linalg.hpp"

namespace noarb {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

long long Rng::between(long long lo, long long hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Scalar Rng::rational(long long max_num, long long max_den) {
  const long long p = between(-max_num, max_num);
  const long long q = between(1, max_den);
  return make_scalar(p, q);
}

Scalar Rng::in_range(const Scalar& lo, const Scalar& hi, long long steps) {
  return lo + (hi - lo) * make_scalar(between(0, steps), steps);
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::ArbitrageFree: return "arbitrage-free";
    case Regime::ZeroNeutralOnly: return "zero-neutral";
    case Regime::PlantArbitrage: return "plant-arbitrage";
  }
  return "?";
}

Regime parse_regime(const std::string& text) {
  if (text == "arbitrage-free") return Regime::ArbitrageFree;
  if (text == "zero-neutral") return Regime::ZeroNeutralOnly;
  if (text == "plant-arbitrage") return Regime::PlantArbitrage;
  throw std::invalid_argument("unknown regime '" + text + "'");
}

void validate_params(const GeneratorParams& p) {
  if (p.depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (p.branching < 1) throw std::invalid_argument("branching must be at least 1");
  if (p.dim < 1) throw std::invalid_argument("dim must be at least 1");
  if (p.numeraire > p.dim) throw std::invalid_argument("numeraire index out of range");
  if (p.price_lo <= 0 || p.price_hi < p.price_lo) throw std::invalid_argument("price bounds must satisfy 0 < lo <= hi");
  if (p.regime == Regime::ZeroNeutralOnly && p.branching < 2) {
    throw std::invalid_argument("zero-neutral regime needs branching >= 2");
  }
  if (p.regime == Regime::PlantArbitrage) {
    std::size_t internal = 0, level = 1;
    for (std::size_t k = 0; k < p.depth; ++k) {
      internal += level;
      level *= p.branching;
    }
    if (p.plant < 1 || p.plant > internal) throw std::invalid_argument("plant count must be between 1 and the node count");
  }
  if (p.depth > 12 || p.dim > 16) throw std::invalid_argument("generator size limits exceeded");
}

namespace {

enum class Kind { Free, Neutral, Arbitrage };

struct Generator {
  const GeneratorParams& p;
  Rng rng;
  std::set<std::size_t> planted;
  std::size_t counter = 0;
  TrajectorySet ts;

  RelPoint random_nonzero() {
    RelPoint v(p.dim);
    do {
      for (auto& e : v) e = rng.rational(5, 4);
    } while (is_zero(v));
    return v;
  }

  // Random increment with h . v > 0.
  RelPoint in_half_space(const RelPoint& h) {
    RelPoint v = random_nonzero();
    const Scalar s = dot(h, v);
    if (s < 0) v = scale(Scalar(-1), v);
    if (s == 0) v = add(v, h);
    return v;
  }

  std::vector<RelPoint> increments(Kind kind) {
    const std::size_t b = p.branching;
    std::vector<RelPoint> out;
    if (kind == Kind::Free) {
      if (b == 1) return {zeros(p.dim)};
      Vector w;
      RelPoint acc = zeros(p.dim);
      for (std::size_t i = 0; i + 1 < b; ++i) {
        out.push_back(random_nonzero());
        w.push_back(make_scalar(rng.between(1, 4)));
        acc = add(acc, scale(w.back(), out.back()));
      }
      const Scalar wb = make_scalar(rng.between(1, 4));
      out.push_back(scale(Scalar(-1) / wb, acc));
    } else {
      RelPoint h(p.dim);
      do {
        for (auto& e : h) e = make_scalar(rng.between(-3, 3));
      } while (is_zero(h));
      if (kind == Kind::Neutral) out.push_back(zeros(p.dim));
      while (out.size() < b) out.push_back(in_half_space(h));
    }
    return out;
  }

  // Largest 2^-q so every child stays strictly positive.
  static std::vector<RelPoint> fit(const RelPoint& x, std::vector<RelPoint> deltas) {
    Scalar t = 1;
    auto ok = [&] {
      for (const auto& d : deltas) {
        for (std::size_t j = 0; j < x.size(); ++j) {
          if (x[j] + t * d[j] <= 0) return false;
        }
      }
      return true;
    };
    while (!ok()) t /= 2;
    for (auto& d : deltas) d = scale(t, d);
    return deltas;
  }

  PricePoint absolute(const RelPoint& x) {
    const Scalar base = rng.in_range(p.price_lo, p.price_hi);
    PricePoint s;
    std::size_t j = 0;
    for (std::size_t i = 0; i <= p.dim; ++i) s.push_back(i == p.numeraire ? base : base * x[j++]);
    return s;
  }

  Kind kind_for(std::size_t index, std::size_t stage) {
    switch (p.regime) {
      case Regime::ArbitrageFree: return Kind::Free;
      case Regime::PlantArbitrage: return planted.count(index) ? Kind::Arbitrage : Kind::Free;
      case Regime::ZeroNeutralOnly: return stage == 0 || rng.coin() ? Kind::Neutral : Kind::Free;
    }
    return Kind::Free;
  }

  void grow(const RelPoint& x, std::vector<PricePoint>& prices, std::vector<std::string>& tags) {
    const std::size_t stage = prices.size() - 1;
    if (stage == p.depth) {
      ts.trajectories.push_back({"t" + std::to_string(ts.trajectories.size()), prices, tags, p.depth});
      return;
    }
    const std::size_t index = counter++;
    const auto deltas = fit(x, increments(kind_for(index, stage)));
    for (std::size_t c = 0; c < deltas.size(); ++c) {
      const RelPoint y = add(x, deltas[c]);
      prices.push_back(absolute(y));
      tags.push_back(tags.back() + "." + std::to_string(c));
      grow(y, prices, tags);
      prices.pop_back();
      tags.pop_back();
    }
  }
};

}  // namespace

TrajectorySet generate_market(const GeneratorParams& p) {
  validate_params(p);
  Generator g{p, Rng(p.seed), {}, 0, {}};
  if (p.regime == Regime::PlantArbitrage) {
    std::size_t internal = 0, level = 1;
    for (std::size_t k = 0; k < p.depth; ++k) {
      internal += level;
      level *= p.branching;
    }
    std::vector<std::size_t> ids(internal);
    for (std::size_t i = 0; i < internal; ++i) ids[i] = i;
    for (std::size_t i = 0; i < p.plant; ++i) {
      std::swap(ids[i], ids[i + g.rng.below(internal - i)]);
      g.planted.insert(ids[i]);
    }
  }
  RelPoint x0(p.dim);
  for (auto& e : x0) e = g.rng.in_range(p.price_lo, p.price_hi);
  std::vector<PricePoint> prices{g.absolute(x0)};
  std::vector<std::string> tags{"r"};
  g.ts.dim = p.dim;
  g.ts.numeraire = p.numeraire;
  g.ts.s0 = prices.front();
  g.ts.w0 = "r";
  g.grow(x0, prices, tags);
  return g.ts;
}

bool regime_satisfied(const GeneratorParams& p, const MarketVerdict& v) {
  switch (p.regime) {
    case Regime::ArbitrageFree: return v.kind == MarketKind::LocallyArbitrageFree;
    case Regime::ZeroNeutralOnly: return v.kind == MarketKind::LocallyZeroNeutral;
    case Regime::PlantArbitrage: return v.arbitrage_nodes.size() == p.plant;
  }
  return false;
}

}  // namespace noarb

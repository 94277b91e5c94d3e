#include "support.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace noarb::oracle {

namespace {

Scalar inner(const Vector& a, const Vector& b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

std::size_t column_rank(Matrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const Scalar f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<RelPoint> distinct(const std::vector<RelPoint>& e) {
  std::vector<RelPoint> out;
  for (const auto& y : e) {
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
  }
  return out;
}

// Every h in {-2..2}^dim, for cheap exact separation proofs.
const std::vector<Vector>& grid(std::size_t dim) {
  static std::vector<std::vector<Vector>> cache(5);
  if (dim > 4) {
    static const std::vector<Vector> empty;
    return empty;
  }
  auto& g = cache[dim];
  if (g.empty()) {
    Vector h(dim, Scalar(-2));
    while (true) {
      if (!all_zero(h)) g.push_back(h);
      std::size_t i = 0;
      while (i < dim && h[i] == 2) h[i++] = -2;
      if (i == dim) break;
      h[i] += 1;
    }
  }
  return g;
}

// Chosen points as columns, plus a row of ones when lifted.
Matrix columns(const std::vector<RelPoint>& pts, const std::vector<std::size_t>& pick, std::size_t dim, bool lift) {
  Matrix m(dim + (lift ? 1 : 0), Vector(pick.size()));
  for (std::size_t j = 0; j < pick.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = pts[pick[j]][i];
    if (lift) m[dim][j] = 1;
  }
  return m;
}

// DFS over independent subsets of size <= limit; `accept` tests each one.
bool search(const std::vector<RelPoint>& pts, std::size_t dim, bool lift, std::size_t limit,
            const std::function<bool(const std::vector<std::size_t>&)>& accept) {
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> go = [&](std::size_t from) {
    for (std::size_t i = from; i < pts.size(); ++i) {
      pick.push_back(i);
      if (column_rank(columns(pts, pick, dim, lift)) == pick.size()) {
        if (accept(pick)) return true;
        if (pick.size() < limit && go(i + 1)) return true;
      }
      pick.pop_back();
    }
    return false;
  };
  return go(0);
}

}  // namespace

std::optional<Vector> solve_full_column_rank(Matrix m, Vector rhs) {
  const std::size_t rows = m.size(), cols = rows ? m.front().size() : 0;
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
  std::vector<std::size_t> pivot_row(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Scalar f = m[i][c] / m[r][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_row[c] = r++;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (m[i][cols] != 0) return std::nullopt;
  }
  Vector w(cols);
  for (std::size_t c = 0; c < cols; ++c) w[c] = m[pivot_row[c]][cols] / m[pivot_row[c]][c];
  return w;
}

bool zero_in_hull(const std::vector<RelPoint>& e, std::size_t dim) {
  const auto pts = distinct(e);
  for (const auto& y : pts) {
    if (all_zero(y)) return true;
  }
  for (const auto& h : grid(dim)) {
    if (std::all_of(pts.begin(), pts.end(), [&](const RelPoint& y) { return inner(h, y) > 0; })) return false;
  }
  Vector target(dim + 1, Scalar(0));
  target[dim] = 1;
  return search(pts, dim, true, dim + 1, [&](const std::vector<std::size_t>& pick) {
    const auto w = solve_full_column_rank(columns(pts, pick, dim, true), target);
    return w && std::all_of(w->begin(), w->end(), [](const Scalar& x) { return x >= 0; });
  });
}

bool in_cone(const std::vector<RelPoint>& gens, const RelPoint& x, std::size_t dim) {
  if (all_zero(x)) return true;
  std::vector<RelPoint> pts;
  for (const auto& g : distinct(gens)) {
    if (!all_zero(g)) pts.push_back(g);
  }
  for (const auto& h : grid(dim)) {
    if (inner(h, x) < 0 && std::all_of(pts.begin(), pts.end(), [&](const RelPoint& g) { return inner(h, g) >= 0; })) {
      return false;
    }
  }
  return search(pts, dim, false, dim, [&](const std::vector<std::size_t>& pick) {
    const auto w = solve_full_column_rank(columns(pts, pick, dim, false), x);
    return w && std::all_of(w->begin(), w->end(), [](const Scalar& v) { return v >= 0; });
  });
}

bool zero_in_relative_interior(const std::vector<RelPoint>& e, std::size_t dim) {
  const auto pts = distinct(e);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (all_zero(pts[j])) continue;
    std::vector<RelPoint> others;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != j) others.push_back(pts[i]);
    }
    RelPoint neg = pts[j];
    for (auto& v : neg) v = -v;
    if (!in_cone(others, neg, dim)) return false;
  }
  return true;
}

std::vector<RelPoint> random_set(Rng& rng, std::size_t dim, std::size_t size, SetFamily family) {
  auto point = [&] {
    RelPoint y(dim);
    for (auto& v : y) v = rng.rational(100, 100);
    return y;
  };
  auto nonzero_h = [&] {
    Vector h(dim);
    do {
      for (auto& v : h) v = Scalar(rng.between(-2, 2));
    } while (all_zero(h));
    return h;
  };
  std::vector<RelPoint> out;
  switch (family) {
    case SetFamily::Symmetric:
      while (out.size() < size) out.push_back(point());
      break;
    case SetFamily::HalfSpace: {
      const Vector h = nonzero_h();
      while (out.size() < size) {
        RelPoint y = point();
        const Scalar s = inner(h, y);
        if (s == 0) continue;
        if (s < 0) {
          for (auto& v : y) v = -v;
        }
        out.push_back(std::move(y));
      }
      break;
    }
    case SetFamily::WeakHalfSpace: {
      const std::size_t axis = rng.below(dim);
      const int sign = rng.coin() ? 1 : -1;
      while (out.size() < size) {
        RelPoint y = point();
        if (rng.coin()) {
          y[axis] = 0;
          if (rng.coin() && out.size() + 1 < size) {
            RelPoint z = y;
            for (auto& v : z) v = -v;
            out.push_back(std::move(z));
          }
        } else {
          if (y[axis] == 0) continue;
          if ((y[axis] > 0) != (sign > 0)) y[axis] = -y[axis];
        }
        out.push_back(std::move(y));
      }
      break;
    }
    case SetFamily::Planted:
      while (out.size() + 1 < size) {
        RelPoint y = point();
        RelPoint z = y;
        for (auto& v : z) v = -v;
        out.push_back(std::move(y));
        out.push_back(std::move(z));
      }
      if (out.size() < size) out.push_back(rng.coin() ? RelPoint(dim, Scalar(0)) : point());
      break;
    case SetFamily::LowRank: {
      std::vector<bool> keep(dim);
      for (std::size_t i = 0; i < dim; ++i) keep[i] = rng.coin();
      while (out.size() < size) {
        RelPoint y = point();
        for (std::size_t i = 0; i < dim; ++i) {
          if (!keep[i]) y[i] = 0;
        }
        out.push_back(std::move(y));
      }
      break;
    }
  }
  for (std::size_t i = out.size(); i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

RelPoint relative(const TrajectorySet& ts, std::size_t t, std::size_t k) {
  const PricePoint& s = ts.trajectories[t].prices[k];
  RelPoint x;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != ts.numeraire) x.push_back(s[i] / s[ts.numeraire]);
  }
  return x;
}

std::vector<std::size_t> prefix_class(const TrajectorySet& ts, std::size_t t, std::size_t k) {
  const Trajectory& a = ts.trajectories[t];
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < ts.trajectories.size(); ++u) {
    const Trajectory& b = ts.trajectories[u];
    if (b.horizon <= k) continue;
    bool same = true;
    for (std::size_t i = 0; i <= k && same; ++i) same = a.prices[i] == b.prices[i] && a.tags[i] == b.tags[i];
    if (same) out.push_back(u);
  }
  return out;
}

VerdictKind node_kind(const TrajectorySet& ts, std::size_t t, std::size_t k) {
  std::vector<RelPoint> inc;
  for (std::size_t u : prefix_class(ts, t, k)) {
    RelPoint d = relative(ts, u, k + 1);
    const RelPoint x = relative(ts, u, k);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= x[i];
    inc.push_back(std::move(d));
  }
  if (zero_in_relative_interior(inc, ts.dim)) return VerdictKind::ArbitrageFree;
  if (zero_in_hull(inc, ts.dim)) return VerdictKind::ZeroNeutralOnly;
  return VerdictKind::ArbitrageNode;
}

std::vector<Scalar> terminal_gains(const Market& m, const Portfolio& p) {
  const TrajectorySet& ts = m.set();
  std::vector<Scalar> out;
  for (std::size_t t = 0; t < ts.trajectories.size(); ++t) {
    const Trajectory& tr = ts.trajectories[t];
    const std::size_t end = std::min(p.liquidation[t], tr.prices.size() - 1);
    Scalar g = 0;
    for (std::size_t i = 0; i < end && i < tr.horizon; ++i) {
      const auto node = m.node_of(t, i);
      if (!node) continue;
      const RelPoint a = relative(ts, t, i), b = relative(ts, t, i + 1);
      for (std::size_t j = 0; j < a.size(); ++j) g += p.holdings[*node][j] * (b[j] - a[j]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Portfolio> random_family(const Market& m, Rng& rng, std::size_t count) {
  const std::size_t d = m.dim();
  auto vec = [&] {
    Vector h(d);
    for (auto& v : h) v = rng.rational(5, 4);
    return h;
  };
  std::vector<Portfolio> out;
  while (out.size() < count) {
    switch (out.size() % 5) {
      case 0:
        out.push_back(restricted_portfolio(m, rng.below(m.nodes().size()), vec(), Scalar(0)));
        break;
      case 1:
        out.push_back(constant_portfolio(m, vec(), Scalar(0)));
        break;
      case 2: {
        const auto a = restricted_portfolio(m, rng.below(m.nodes().size()), vec(), Scalar(0));
        const auto b = restricted_portfolio(m, rng.below(m.nodes().size()), vec(), Scalar(0));
        out.push_back(sum(m, a, b));
        break;
      }
      case 3:
        out.push_back(sum(m, constant_portfolio(m, vec(), Scalar(0)),
                          restricted_portfolio(m, rng.below(m.nodes().size()), vec(), Scalar(0))));
        break;
      default: {
        Portfolio p = null_portfolio(m);
        for (auto& h : p.holdings) h = vec();
        for (std::size_t t = 0; t < m.trajectory_count(); ++t) p.liquidation[t] = m.trajectory(t).horizon;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

FractionalTransform random_fractional_transform(Rng& rng, std::size_t dim, std::size_t numeraire, bool positive) {
  Matrix L;
  do {
    L.assign(dim + 1, Vector(dim + 1));
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t j = 0; j <= dim; ++j) {
        if (positive) {
          L[i][j] = Scalar(rng.between(i == j || i == numeraire ? 1 : 0, 3));
        } else {
          L[i][j] = i == numeraire ? Scalar(rng.between(1, 3)) : Scalar(rng.between(-3, 3));
        }
      }
    }
  } while (column_rank(L) != dim + 1);
  FractionalTransform t{std::move(L), numeraire, numeraire, NumeraireCoordinate{}};
  if (rng.coin()) {
    Monomial mono{make_scalar(rng.between(1, 5), rng.between(1, 5)), std::vector<long>(dim + 1)};
    for (auto& e : mono.exponents) e = static_cast<long>(rng.between(-1, 1));
    t.multiplier = std::move(mono);
  }
  return t;
}

}  // namespace noarb::oracle

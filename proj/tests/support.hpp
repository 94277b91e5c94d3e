#pragma once

// Reference oracles for the tests. None of them touches the LP engine:
// hull questions are settled by Caratheodory subset enumeration with exact
// Gaussian elimination, market questions by walking raw trajectories.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "noarb/classify.hpp"
#include "noarb/generator.hpp"
#include "noarb/geometry.hpp"
#include "noarb/market.hpp"
#include "noarb/portfolio.hpp"
#include "noarb/symmetry.hpp"

namespace noarb::oracle {

/// Unique solution of M w = rhs when M has full column rank.
std::optional<Vector> solve_full_column_rank(Matrix m, Vector rhs);

/// 0 in co(E).
bool zero_in_hull(const std::vector<RelPoint>& e, std::size_t dim);
/// 0 in ri(co(E)): every nonzero y in E has -y in cone(E \ {y}).
bool zero_in_relative_interior(const std::vector<RelPoint>& e, std::size_t dim);
/// x in cone(gens).
bool in_cone(const std::vector<RelPoint>& gens, const RelPoint& x, std::size_t dim);

enum class SetFamily { Symmetric, HalfSpace, WeakHalfSpace, Planted, LowRank };

/// `size` points in dimension `dim`, coordinates p/q with |p|, q <= 100.
std::vector<RelPoint> random_set(Rng& rng, std::size_t dim, std::size_t size, SetFamily family);

/// Relative prices straight from the raw trajectory.
RelPoint relative(const TrajectorySet& ts, std::size_t t, std::size_t k);

/// Members of the prefix class of trajectory t at stage k (k < M).
std::vector<std::size_t> prefix_class(const TrajectorySet& ts, std::size_t t, std::size_t k);

/// Node verdict from increments, decided by the enumeration oracles.
VerdictKind node_kind(const TrajectorySet& ts, std::size_t t, std::size_t k);

/// Terminal gain sum_{i<N} H_i . (X_{i+1} - X_i) per trajectory, with
/// holdings read through the market's node index.
std::vector<Scalar> terminal_gains(const Market& m, const Portfolio& p);

/// Restricted, constant and summed portfolios with V0 = 0.
std::vector<Portfolio> random_family(const Market& m, Rng& rng, std::size_t count);

/// L with a strictly positive numeraire row and full rank.
// positive: entries in 0..3 with a positive diagonal, so the positive orthant maps into itself.
FractionalTransform random_fractional_transform(Rng& rng, std::size_t dim, std::size_t numeraire, bool positive = false);

}  // namespace noarb::oracle

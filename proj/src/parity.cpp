#include "noarb/parity.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "noarb/linalg.hpp"
#include "noarb/verify.hpp"

namespace noarb {

namespace {

Scalar positive_part(const Scalar& v) { return v > 0 ? v : Scalar(0); }

std::size_t leaf_depth(const ParityTree& t) {
  if (t.Y) {
    if (!t.children.empty()) throw std::invalid_argument("parity tree leaf has children");
    return 0;
  }
  if (t.children.empty()) throw std::invalid_argument("parity tree node has neither a value nor children");
  if (t.weights.size() != t.children.size()) throw std::invalid_argument("weight count differs from child count");
  Scalar total = 0;
  for (const auto& w : t.weights) {
    if (w < 0) throw std::invalid_argument("negative convex weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("convex weights do not sum to 1");
  const std::size_t d = leaf_depth(t.children.front());
  for (const auto& c : t.children) {
    if (leaf_depth(c) != d) throw std::invalid_argument("parity tree leaves sit at different depths");
  }
  return d + 1;
}

RelPoint terminal_relative(const Scalar& y, const Scalar& K) {
  if (y <= 0) throw std::invalid_argument("terminal underlying must be positive");
  return {positive_part(y - K) / K, positive_part(K - y) / K, y / K};
}

// Relative price of a subtree root: the terminal payoff at leaves, the
// weighted combination of the children's relative prices above them.
RelPoint subtree_relative(const ParityTree& t, const Scalar& K) {
  if (t.Y) return terminal_relative(*t.Y, K);
  RelPoint x = zeros(kParityDim);
  for (std::size_t i = 0; i < t.children.size(); ++i) x = add(x, scale(t.weights[i], subtree_relative(t.children[i], K)));
  return x;
}

struct Builder {
  const ParitySpec& spec;
  std::vector<Scalar> bond;
  std::vector<std::string> tags;
  std::size_t depth = 0;
  TrajectorySet ts;

  void visit(const ParityTree& t, std::size_t stage, std::vector<PricePoint>& path) {
    PricePoint s = scale(bond[stage], subtree_relative(t, spec.strike));
    s.push_back(bond[stage]);
    if (stage == 0 && spec.root_offset) {
      if (spec.root_offset->size() != kParityDim + 1) throw std::invalid_argument("root offset must have 4 entries");
      s = add(s, *spec.root_offset);
    }
    path.push_back(std::move(s));
    if (t.Y) {
      ts.trajectories.push_back({"T" + std::to_string(ts.trajectories.size()), path, tags, depth});
    } else {
      for (const auto& c : t.children) visit(c, stage + 1, path);
    }
    path.pop_back();
  }
};

const std::array<Scalar, 4>& pi_row() {
  static const std::array<Scalar, 4> row{Scalar(1), Scalar(-1), Scalar(-1), Scalar(1)};
  return row;
}

}  // namespace

ParitySpec one_step_spec(const Scalar& strike, const std::vector<Scalar>& terminal, const std::vector<Scalar>& weights) {
  ParitySpec spec;
  spec.strike = strike;
  for (const auto& y : terminal) {
    ParityTree leaf;
    leaf.Y = y;
    spec.tree.children.push_back(std::move(leaf));
  }
  spec.tree.weights = weights;
  return spec;
}

ParitySpec demo_spec() { return one_step_spec(Scalar(1), {Scalar(2), Scalar(1, 2)}, {Scalar(1, 2), Scalar(1, 2)}); }

TrajectorySet build_parity_market(const ParitySpec& spec) {
  if (spec.strike <= 0) throw std::invalid_argument("strike must be positive");
  const std::size_t depth = leaf_depth(spec.tree);
  if (depth == 0) throw std::invalid_argument("parity tree needs at least one step");

  Builder b{spec, {}, {}, depth, {}};
  if (spec.bond) {
    if (spec.bond->size() != depth + 1) throw std::invalid_argument("bond schedule must have one entry per stage");
    if (spec.bond->back() != spec.strike) throw std::invalid_argument("terminal bond value must equal the strike");
    for (const auto& v : *spec.bond) {
      if (v <= 0) throw std::invalid_argument("bond values must be positive");
    }
    b.bond = *spec.bond;
  } else {
    b.bond.assign(depth + 1, spec.strike);
  }
  if (spec.times) {
    if (spec.times->size() != depth + 1) throw std::invalid_argument("time grid must have one entry per stage");
    for (std::size_t i = 1; i < spec.times->size(); ++i) {
      if ((*spec.times)[i] <= (*spec.times)[i - 1]) throw std::invalid_argument("stage times must increase");
    }
    for (const auto& t : *spec.times) b.tags.push_back(to_string(t));
  } else {
    for (std::size_t i = 0; i <= depth; ++i) b.tags.push_back(std::to_string(i));
  }

  b.ts.dim = kParityDim;
  b.ts.numeraire = kBond;
  b.ts.w0 = b.tags.front();
  std::vector<PricePoint> path;
  b.visit(spec.tree, 0, path);
  b.ts.s0 = b.ts.trajectories.front().prices.front();
  return b.ts;
}

Scalar pi_functional(const RelPoint& x) {
  if (x.size() != kParityDim) throw std::invalid_argument("pi is defined on 3-dimensional relative prices");
  return x[0] - x[1] - x[2] + 1;
}

ParityReport verify_parity(const Market& m) {
  const TrajectorySet& ts = m.set();
  if (ts.dim != kParityDim || ts.numeraire != kBond) {
    throw std::invalid_argument("parity checks need four assets with the bond as numeraire");
  }
  ParityReport rep;

  std::optional<Scalar> terminal_bond;
  for (std::size_t t = 0; t < m.trajectory_count(); ++t) {
    const auto& tr = m.trajectory(t);
    const PricePoint& s = tr.prices[tr.horizon];
    const auto where = [&](const std::string& what) {
      return describe(Violation{tr.id, tr.horizon, what});
    };
    if (s[0] != positive_part(s[2] - s[3])) rep.boundary_issues.push_back(where("terminal C != (Y - B)+"));
    if (s[1] != positive_part(s[3] - s[2])) rep.boundary_issues.push_back(where("terminal P != (B - Y)+"));
    if (!terminal_bond) terminal_bond = s[3];
    if (s[3] != *terminal_bond) rep.boundary_issues.push_back(where("terminal bond differs between trajectories"));
    if (pi_functional(m.relative(t, tr.horizon)) != 0) rep.boundary_issues.push_back(where("terminal pi != 0"));
  }

  rep.verdict = classify_market_serial(m);
  for (const auto& v : rep.verdict.nodes) {
    if (!v.zero_neutral()) rep.not_zero_neutral.push_back(m.ref(v.node));
  }

  // Backward induction: X_k = sum lambda_i X_{k+1,i} and pi is affine, so
  // pi(X_k) = 0 once every reachable point used by the certificate has it.
  std::map<std::size_t, bool> established;  // node id -> pi shown to vanish
  std::vector<std::size_t> order(m.nodes().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.node(a).stage > m.node(b).stage; });
  for (std::size_t id : order) {
    const Node& n = m.node(id);
    const NodeVerdict& v = rep.verdict.nodes[id];
    bool ok = v.membership.has_value() && check_hull_certificate(v.increments, *v.membership, zeros(kParityDim));
    if (ok) {
      const RelPoint here = m.relative(n.representative, n.stage);
      for (std::size_t i = 0; i < v.membership->indices.size() && ok; ++i) {
        const RelPoint next = add(here, v.increments[v.membership->indices[i]]);
        bool found = false;
        for (std::size_t t : n.members) {
          if (m.relative(t, n.stage + 1) != next) continue;
          const auto child = m.node_of(t, n.stage + 1);
          if (child ? established[*child] : pi_functional(next) == 0) {
            found = true;
            break;
          }
        }
        ok = found;
      }
    }
    established[id] = ok;
    if (!ok) rep.derivation_failures.push_back(m.ref(id));
  }

  for (std::size_t t = 0; t < m.trajectory_count(); ++t) {
    const auto& tr = m.trajectory(t);
    for (std::size_t k = 0; k <= tr.horizon; ++k) {
      if (pi_functional(m.relative(t, k)) != 0) rep.pi_failures.push_back({tr.id, k});
    }
  }
  return rep;
}

FractionalTransform parity_swap_nas() {
  Matrix L(4, Vector(4, Scalar(0)));
  L[0][1] = 1;
  L[1][0] = 1;
  L[2][3] = 1;
  L[3][2] = 1;
  Monomial m{Scalar(1), {0, 0, 0, -1}};
  return {std::move(L), kBond, kBond, std::move(m)};
}

ParityFactor transformed_parity_factor(const Matrix& A, const Vector& b, const Vector& B, const Scalar& c, const Market& m) {
  if (A.size() != kParityDim || b.size() != kParityDim || B.size() != kParityDim) {
    throw std::invalid_argument("parity factor needs 3x3 A and 3-vectors b, B");
  }
  for (const auto& row : A) {
    if (row.size() != kParityDim) throw std::invalid_argument("parity factor needs 3x3 A");
  }
  if (m.dim() != kParityDim || m.set().numeraire != kBond) throw std::invalid_argument("market is not shaped as a parity market");
  // L = [[A, b], [B, c]] with the bond last; a_F = L00 - L10 - L20 + L30.
  ParityFactor out;
  out.a_F = A[0][0] - A[1][0] - A[2][0] + B[0];
  const InducedMap f{A, b, B, c};
  for (std::size_t t = 0; t < m.trajectory_count() && !out.failure; ++t) {
    const auto& tr = m.trajectory(t);
    for (std::size_t k = 0; k < tr.prices.size(); ++k) {
      const RelPoint x = m.relative(t, k);
      if (pi_functional(f(x)) * f.denominator(x) != out.a_F * pi_functional(x)) {
        out.failure = NodeRef{tr.id, k};
        break;
      }
    }
  }
  return out;
}

ParityFactor transformed_parity_factor(const InducedMap& f, const Market& m) {
  return transformed_parity_factor(f.A, f.b, f.B, f.c, m);
}

Matrix boundary_invariant_matrix(const Scalar& a, const Vector& r1, const Vector& r2, const Vector& r3) {
  if (r1.size() != 4 || r2.size() != 4 || r3.size() != 4) throw std::invalid_argument("rows must have 4 entries");
  Vector r0(4);
  for (std::size_t i = 0; i < 4; ++i) r0[i] = a * pi_row()[i] + r1[i] + r2[i] - r3[i];
  return {r0, r1, r2, r3};
}

ParityLabReport run_parity_lab(const ParitySpec& spec) {
  const Market market(build_parity_market(spec));
  ParityLabReport rep;
  rep.source = verify_parity(market);
  const auto nas = parity_swap_nas();
  rep.nas = verify_symmetry_on_market(nas, market);
  rep.transformed = verify_parity(Market(rep.nas.transformed));
  rep.identity_factor = transformed_parity_factor(induce_map(identity_transform(kParityDim, kBond)), market);
  rep.nas_factor = transformed_parity_factor(induce_map(nas), market);
  return rep;
}

}  // namespace noarb

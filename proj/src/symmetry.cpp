#include "noarb/symmetry.hpp"

#include <algorithm>
#include <span>
#include <string>
#include <type_traits>

#include "noarb/linalg.hpp"

namespace noarb {

DomainViolation::DomainViolation(std::string trajectory, std::size_t stage, const std::string& what)
    : std::domain_error("trajectory '" + trajectory + "' stage " + std::to_string(stage) + ": " + what),
      trajectory_(std::move(trajectory)),
      stage_(stage) {}

namespace {

Scalar power(const Scalar& base, long e) {
  if (e < 0 && base == 0) throw std::domain_error("negative power of a zero coordinate");
  Scalar r = 1;
  const Scalar f = e < 0 ? Scalar(1 / base) : base;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= f;
  return r;
}

// Proportionality u = mu v with mu > 0, exactly.
bool positive_multiple(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) return false;
  std::optional<Scalar> mu;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      mu = u[i] / v[i];
      break;
    }
  }
  if (!mu || *mu <= 0) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (u[i] != *mu * v[i]) return false;
  }
  return true;
}

}  // namespace

void validate_transform(const FractionalTransform& t) {
  if (t.L.size() < 2) throw std::invalid_argument("transform matrix needs at least two rows");
  const std::size_t cols = t.L.front().size();
  if (cols < 2) throw std::invalid_argument("transform matrix needs at least two columns");
  for (const auto& row : t.L) {
    if (row.size() != cols) throw std::invalid_argument("transform matrix rows differ in length");
  }
  if (t.src_numeraire >= cols) throw std::invalid_argument("source numeraire out of range");
  if (t.dst_numeraire >= t.L.size()) throw std::invalid_argument("destination numeraire out of range");
  if (is_zero(t.L[t.dst_numeraire])) throw std::invalid_argument("numeraire row of the transform matrix is zero");
  if (const auto* m = std::get_if<Monomial>(&t.multiplier)) {
    if (m->exponents.size() != cols) throw std::invalid_argument("monomial exponent count differs from input length");
    if (m->coeff <= 0) throw std::invalid_argument("monomial coefficient must be positive");
  }
  if (const auto* c = std::get_if<Composite>(&t.multiplier)) {
    if (!c->first || !c->second) throw std::invalid_argument("composite multiplier is incomplete");
  }
}

FractionalTransform identity_transform(std::size_t d, std::size_t numeraire) {
  if (numeraire > d) throw std::invalid_argument("numeraire index out of range");
  return {identity(d + 1), numeraire, numeraire, NumeraireCoordinate{}};
}

FractionalTransform numeraire_swap(std::size_t d, std::size_t i, std::size_t j) {
  if (i > d || j > d) throw std::invalid_argument("swap index out of range");
  Matrix L = identity(d + 1);
  std::swap(L[i], L[j]);
  Monomial m{Scalar(1), std::vector<long>(d + 1, 0)};
  m.exponents[j] = 1;
  return {std::move(L), i, i, std::move(m)};
}

FractionalTransform compose(const FractionalTransform& first, const FractionalTransform& second) {
  validate_transform(first);
  validate_transform(second);
  if (second.in_dim() != first.out_dim()) throw std::invalid_argument("transform dimensions do not chain");
  if (second.src_numeraire != first.dst_numeraire) throw std::invalid_argument("numeraire indices do not chain");
  FractionalTransform out;
  out.L = multiply(second.L, first.L);
  out.src_numeraire = first.src_numeraire;
  out.dst_numeraire = second.dst_numeraire;
  if (std::holds_alternative<NumeraireCoordinate>(second.multiplier)) {
    // second's f0 reads f1(s)[nu'], which is first's own f0.
    out.multiplier = first.multiplier;
  } else {
    out.multiplier = Composite{std::make_shared<const FractionalTransform>(first),
                               std::make_shared<const FractionalTransform>(second)};
  }
  return out;
}

Scalar multiplier_value(const FractionalTransform& t, const PricePoint& s) {
  if (s.size() != t.in_dim() + 1) throw std::invalid_argument("price point has wrong length for transform");
  Scalar v = std::visit(
      [&](const auto& m) -> Scalar {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NumeraireCoordinate>) {
          return s[t.src_numeraire];
        } else if constexpr (std::is_same_v<M, Monomial>) {
          Scalar r = m.coeff;
          for (std::size_t i = 0; i < s.size(); ++i) r *= power(s[i], m.exponents[i]);
          return r;
        } else if constexpr (std::is_same_v<M, SampleTable>) {
          for (const auto& [p, value] : m.entries) {
            if (p == s) return value;
          }
          throw std::domain_error("multiplier not sampled at " + to_string(std::span<const Scalar>(s)));
        } else {
          return multiplier_value(*m.second, apply_point(*m.first, s));
        }
      },
      t.multiplier);
  if (v <= 0) throw std::domain_error("multiplier is not positive at " + to_string(std::span<const Scalar>(s)));
  return v;
}

PricePoint apply_point(const FractionalTransform& t, const PricePoint& s) {
  if (s.size() != t.in_dim() + 1) throw std::invalid_argument("price point has wrong length for transform");
  if (s[t.src_numeraire] <= 0) throw std::domain_error("non-positive source numeraire");
  PricePoint ls = multiply(t.L, s);
  const Scalar den = ls[t.dst_numeraire];
  if (den <= 0) throw std::domain_error("numeraire row of L is not positive");
  const Scalar k = multiplier_value(t, s) / den;
  for (auto& e : ls) e *= k;
  return ls;
}

Scalar InducedMap::denominator(const RelPoint& x) const {
  if (x.size() != B.size()) throw std::invalid_argument("point has wrong dimension for induced map");
  return dot(B, x) + c;
}

RelPoint InducedMap::operator()(const RelPoint& x) const {
  const Scalar den = denominator(x);
  if (den <= 0) throw std::domain_error("outside induced map domain: B.x + c <= 0");
  RelPoint y = add(multiply(A, x), b);
  for (auto& e : y) e /= den;
  return y;
}

InducedMap induce_map(const FractionalTransform& t) {
  validate_transform(t);
  const std::size_t nu = t.src_numeraire;
  const std::size_t nu2 = t.dst_numeraire;
  InducedMap f;
  for (std::size_t j = 0; j < t.L.size(); ++j) {
    if (j == nu2) continue;
    Vector row;
    for (std::size_t i = 0; i < t.L[j].size(); ++i) {
      if (i != nu) row.push_back(t.L[j][i]);
    }
    f.A.push_back(std::move(row));
    f.b.push_back(t.L[j][nu]);
  }
  for (std::size_t i = 0; i < t.L[nu2].size(); ++i) {
    if (i != nu) f.B.push_back(t.L[nu2][i]);
  }
  f.c = t.L[nu2][nu];
  return f;
}

TrajectorySet apply_transform(const FractionalTransform& t, const TrajectorySet& ts) {
  validate_transform(t);
  if (ts.dim != t.in_dim()) throw std::invalid_argument("transform input dimension differs from market dimension");
  if (ts.numeraire != t.src_numeraire) throw std::invalid_argument("market numeraire differs from transform source numeraire");
  auto map = [&](const PricePoint& s, const std::string& id, std::size_t k) {
    try {
      return apply_point(t, s);
    } catch (const std::domain_error& e) {
      throw DomainViolation(id, k, e.what());
    }
  };
  TrajectorySet out;
  out.dim = t.out_dim();
  out.numeraire = t.dst_numeraire;
  out.w0 = ts.w0;
  out.s0 = map(ts.s0, ts.trajectories.empty() ? std::string() : ts.trajectories.front().id, 0);
  out.trajectories.reserve(ts.trajectories.size());
  for (const auto& tr : ts.trajectories) {
    Trajectory n{tr.id, {}, tr.tags, tr.horizon};
    n.prices.reserve(tr.prices.size());
    for (std::size_t k = 0; k < tr.prices.size(); ++k) n.prices.push_back(map(tr.prices[k], tr.id, k));
    out.trajectories.push_back(std::move(n));
  }
  return out;
}

std::optional<PricePoint> SampledMap::lookup(const PricePoint& s) const {
  for (const auto& [p, v] : entries) {
    if (p == s) return v;
  }
  return std::nullopt;
}

bool verify_scalar_condition(const FractionalTransform& t, const std::vector<std::pair<PricePoint, Scalar>>& samples) {
  for (const auto& [s, lambda] : samples) {
    if (lambda <= 0) throw std::invalid_argument("scaling factor must be positive");
    try {
      if (!positive_multiple(apply_point(t, scale(lambda, s)), apply_point(t, s))) return false;
    } catch (const std::domain_error&) {
      return false;
    }
  }
  return true;
}

bool verify_scalar_condition(const SampledMap& f, const std::vector<std::pair<PricePoint, Scalar>>& samples) {
  for (const auto& [s, lambda] : samples) {
    if (lambda <= 0) throw std::invalid_argument("scaling factor must be positive");
    const auto base = f.lookup(s);
    const auto scaled = f.lookup(scale(lambda, s));
    if (!base || !scaled || !positive_multiple(*scaled, *base)) return false;
  }
  return true;
}

bool check_strict_icp(const PointMap& f, const std::vector<SegmentSample>& segments) {
  for (const auto& seg : segments) {
    const Vector fa = f(seg.a);
    const Vector fb = f(seg.b);
    for (const auto& t : seg.params) {
      if (t <= 0 || t >= 1) throw std::invalid_argument("segment parameter must lie in (0, 1)");
      const Vector x = add(scale(t, seg.a), scale(1 - t, seg.b));
      if (!open_segment_member(f(x), fa, fb)) return false;
    }
  }
  return true;
}

bool check_strict_icp(const InducedMap& f, const std::vector<SegmentSample>& segments) {
  return check_strict_icp(PointMap([&f](const Vector& x) { return f(x); }), segments);
}

ImageRank image_rank(const FractionalTransform& t) {
  validate_transform(t);
  ImageRank r;
  r.rank = rank(t.L);
  r.spans_beyond_plane = r.rank >= 3;
  return r;
}

SymmetryReport verify_symmetry_on_market(const FractionalTransform& t, const Market& m) {
  SymmetryReport rep;
  rep.rank = image_rank(t);
  rep.transformed = apply_transform(t, m.set());
  const Market image(rep.transformed);
  rep.before = classify_market(m);
  rep.after = classify_market(image);
  for (const auto& node : m.nodes()) {
    const auto target = image.node_of(node.representative, node.stage);
    if (!target) throw std::logic_error("transformed market lost a node");
    NodeImplication imp;
    imp.source_node = node.id;
    imp.target_node = *target;
    imp.before = rep.before.nodes[node.id].kind;
    imp.after = rep.after.nodes[*target].kind;
    const bool af_ok = imp.before != VerdictKind::ArbitrageFree || imp.after == VerdictKind::ArbitrageFree;
    const bool zn_ok = imp.before == VerdictKind::ArbitrageNode || imp.after != VerdictKind::ArbitrageNode;
    imp.holds = af_ok && zn_ok;
    if (!imp.holds) rep.violations.push_back(rep.nodes.size());
    rep.nodes.push_back(imp);
  }
  return rep;
}

}  // namespace noarb

#include <doctest.h>

#include "noarb/geometry.hpp"
#include "noarb/linalg.hpp"
#include "noarb/verify.hpp"
#include "support.hpp"

using namespace noarb;

namespace {

Scalar q(long long p, long long d = 1) { return make_scalar(p, d); }

PointSet set2(std::vector<RelPoint> pts) {
  const std::size_t d = pts.front().size();
  return PointSet(d, std::move(pts));
}

}  // namespace

TEST_CASE("hull membership examples") {
  const auto e = set2({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const auto c = hull_membership(e, {0, 0});
  REQUIRE(c);
  CHECK(check_hull_certificate(e, *c, {0, 0}));
  CHECK_FALSE(hull_membership(set2({{1, 0}, {0, 1}}), {0, 0}));
}

TEST_CASE("relative interior examples") {
  const auto seg = set2({{1, 0}, {-1, 0}});
  const auto c = relative_interior_membership(seg, {0, 0});
  REQUIRE(c);
  CHECK(check_relative_interior_certificate(seg, *c, {0, 0}));
  CHECK(c->weights == std::vector<Scalar>{q(1, 2), q(1, 2)});
  CHECK_FALSE(relative_interior_membership(set2({{0, 0}, {1, 0}}), {0, 0}));
}

TEST_CASE("relative interior on positive combinations") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RelPoint> pts;
    const std::size_t n = 1 + rng.below(6);
    RelPoint x = zeros(2);
    Scalar total = 0;
    std::vector<Scalar> w;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back({rng.rational(20, 5), rng.rational(20, 5)});
      w.push_back(q(rng.between(1, 9)));
      total += w.back();
    }
    for (std::size_t i = 0; i < n; ++i) x = add(x, scale(w[i] / total, pts[i]));
    const auto e = set2(pts);
    const auto c = relative_interior_membership(e, x);
    REQUIRE(c);
    CHECK(check_relative_interior_certificate(e, *c, x));
  }
}

TEST_CASE("disperse examples") {
  CHECK(is_disperse(set2({{0, 0}})).disperse());
  const auto e = set2({{1, 0}, {0, 1}});
  const auto v = is_disperse(e);
  REQUIRE_FALSE(v.disperse());
  CHECK(v.witness->kind == SeparationKind::WeakArbitrageWitness);
  CHECK(check_separation_certificate(e, *v.witness));
  const auto edge = set2({{1, 0}, {-1, 0}, {0, 1}});
  const auto w = is_disperse(edge);
  REQUIRE_FALSE(w.disperse());
  CHECK(check_separation_certificate(edge, *w.witness));
  CHECK(w.witness->h[0] == 0);
}

TEST_CASE("zero-neutral examples") {
  const auto pos = set2({{1, 1}, {2, 3}});
  const auto v = is_zero_neutral_set(pos);
  REQUIRE_FALSE(v.zero_neutral());
  CHECK(v.separator->kind == SeparationKind::StrictSeparator);
  CHECK(check_separation_certificate(pos, *v.separator));
  const auto pair = set2({{1, 0}, {-1, 0}});
  const auto w = is_zero_neutral_set(pair);
  REQUIRE(w.zero_neutral());
  CHECK(check_hull_certificate(pair, *w.membership, {0, 0}));
}

TEST_CASE("verdicts agree with enumeration oracles") {
  using oracle::SetFamily;
  Rng rng(20240611);
  const SetFamily families[] = {SetFamily::Symmetric, SetFamily::HalfSpace, SetFamily::WeakHalfSpace, SetFamily::Planted,
                                SetFamily::LowRank};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + rng.below(3);
    const std::size_t n = 1 + rng.below(12);
    const auto pts = oracle::random_set(rng, d, n, families[trial % 5]);
    const PointSet e(d, pts);
    const auto disp = is_disperse(e);
    const auto zn = is_zero_neutral_set(e);
    CAPTURE(trial);
    CHECK(disp.disperse() == oracle::zero_in_relative_interior(pts, d));
    CHECK(zn.zero_neutral() == oracle::zero_in_hull(pts, d));
    if (!disp.disperse()) {
      CHECK(check_separation_certificate(e, *disp.witness));
      CHECK_FALSE(relative_interior_membership(e, zeros(d)));
    } else {
      CHECK(zn.zero_neutral());
    }
    if (zn.zero_neutral()) {
      CHECK(check_hull_certificate(e, *zn.membership, zeros(d)));
    } else {
      CHECK(check_separation_certificate(e, *zn.separator));
    }
  }
}

TEST_CASE("translation invariance") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = oracle::random_set(rng, 2, 1 + rng.below(6), oracle::SetFamily::Symmetric);
    const PointSet e(2, pts);
    const RelPoint x{rng.rational(50, 10), rng.rational(50, 10)};
    const PointSet shifted = e.shifted(x);
    CHECK(hull_membership(e, x).has_value() == hull_membership(shifted, zeros(2)).has_value());
    CHECK(relative_interior_membership(e, x).has_value() == relative_interior_membership(shifted, zeros(2)).has_value());
  }
}

TEST_CASE("caratheodory reduction") {
  const PointSet line(1, {{-1}, {q(-1, 2)}, {1}});
  const HullCertificate c{{0, 1, 2}, {q(1, 8), q(1, 2), q(3, 8)}};
  REQUIRE(check_hull_certificate(line, c, {0}));
  const auto r = caratheodory_reduce(line, c);
  CHECK(r.indices.size() <= 2);
  CHECK(check_hull_certificate(line, r, {0}));

  const HullCertificate small{{0, 2}, {q(1, 2), q(1, 2)}};
  const auto same = caratheodory_reduce(line, small);
  CHECK(same.indices == small.indices);
  CHECK(same.weights == small.weights);

  const PointSet hex(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}});
  const HullCertificate six{{0, 1, 2, 3, 4, 5}, std::vector<Scalar>(6, q(1, 6))};
  const auto h = caratheodory_reduce(hex, six);
  CHECK(h.indices.size() <= 3);
  CHECK(check_hull_certificate(hex, h, {0, 0}));
  CHECK_THROWS(caratheodory_reduce(hex, HullCertificate{{0}, {q(2)}}));
}

TEST_CASE("segments") {
  CHECK(open_segment_member({q(1, 2), 0}, {0, 0}, {1, 0}));
  CHECK_FALSE(open_segment_member({0, 0}, {0, 0}, {1, 0}));
  CHECK(closed_segment_member({0, 0}, {0, 0}, {1, 0}));
  CHECK_FALSE(open_segment_member({1, 0, 0}, {q(1, 2), q(-1, 2), 0}, {q(1, 2), q(1, 2), 0}));
  CHECK_FALSE(open_segment_member({q(1, 2), q(1, 100)}, {0, 0}, {1, 0}));
  CHECK(open_segment_member({2}, {2}, {2}));
}

TEST_CASE("checker rejects broken certificates") {
  const PointSet e(1, {{-1}, {1}});
  CHECK_FALSE(certificate_well_formed(e, {{0, 5}, {q(1, 2), q(1, 2)}}));
  CHECK_FALSE(certificate_well_formed(e, {{0, 1}, {q(3, 2), q(-1, 2)}}));
  CHECK_FALSE(certificate_well_formed(e, {{0, 1}, {q(1, 2), q(1, 3)}}));
  CHECK_FALSE(check_hull_certificate(e, {{0, 1}, {q(1, 4), q(3, 4)}}, {0}));
  CHECK_FALSE(check_relative_interior_certificate(e, {{0}, {q(1)}}, {-1}));
  CHECK_FALSE(check_separation_certificate(e, {{1}, SeparationKind::WeakArbitrageWitness}));
  CHECK_FALSE(check_separation_certificate(PointSet(1, {{0}, {1}}), {{1}, SeparationKind::StrictSeparator}));
  CHECK(check_separation_certificate(PointSet(1, {{0}, {1}}), {{1}, SeparationKind::WeakArbitrageWitness}));
}

TEST_CASE("oracle self-checks") {
  CHECK(oracle::zero_in_hull({{1, 0}, {-1, 0}}, 2));
  CHECK_FALSE(oracle::zero_in_hull({{1, 0}, {0, 1}}, 2));
  CHECK(oracle::zero_in_relative_interior({{0, 0}}, 2));
  CHECK_FALSE(oracle::zero_in_relative_interior({{0, 0}, {1, 0}}, 2));
  CHECK(oracle::zero_in_relative_interior({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, 2));
  CHECK_FALSE(oracle::zero_in_relative_interior({{1, 0}, {-1, 0}, {0, 1}}, 2));
  CHECK(oracle::in_cone({{1, 0}, {0, 1}}, {2, 3}, 2));
  CHECK_FALSE(oracle::in_cone({{1, 0}, {0, 1}}, {-1, 3}, 2));
}

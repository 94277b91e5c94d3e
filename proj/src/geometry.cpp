#include "noarb/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "noarb/linalg.hpp"
#include "noarb/lp.hpp"
#include "noarb/verify.hpp"

namespace noarb {

namespace {

void require_dim(const PointSet& e, const RelPoint& x) {
  if (x.size() != e.dim()) throw std::invalid_argument("dimension mismatch between point and point set");
}

HullCertificate positive_part(const std::vector<std::size_t>& idx, const Vector& w) {
  HullCertificate cert;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (w[i] != 0) {
      cert.indices.push_back(idx[i]);
      cert.weights.push_back(w[i]);
    }
  }
  return cert;
}

// Scale h into the box [-1, 1]^d without changing its sign pattern.
RelPoint normalize_box(RelPoint h) {
  Scalar m = 0;
  for (const auto& e : h) m = std::max(m, Scalar(abs(e)));
  if (m > 1) {
    for (auto& e : h) e /= m;
  }
  return h;
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<RelPoint> points) : dim_(dim), points_(std::move(points)) {
  if (dim_ == 0) throw std::invalid_argument("point set dimension must be >= 1");
  if (points_.empty()) throw std::invalid_argument("point set must be nonempty");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw std::invalid_argument("point set entries disagree on dimension");
  }
}

std::vector<std::size_t> PointSet::distinct_indices() const {
  std::map<RelPoint, std::size_t> seen;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (seen.emplace(points_[i], i).second) out.push_back(i);
  }
  return out;
}

PointSet PointSet::shifted(const RelPoint& x0) const {
  if (x0.size() != dim_) throw std::invalid_argument("dimension mismatch in shift");
  std::vector<RelPoint> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back(sub(p, x0));
  return PointSet(dim_, std::move(pts));
}

std::optional<HullCertificate> hull_membership(const PointSet& e, const RelPoint& x) {
  require_dim(e, x);
  const auto idx = e.distinct_indices();
  lp::LinearProgram prog;
  for (std::size_t i = 0; i < idx.size(); ++i) prog.add_variable();
  for (std::size_t j = 0; j < e.dim(); ++j) {
    Vector row(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) row[i] = e[idx[i]][j];
    prog.add_constraint(std::move(row), lp::Sense::Equal, x[j]);
  }
  prog.add_constraint(Vector(idx.size(), Scalar(1)), lp::Sense::Equal, Scalar(1));
  const auto sol = prog.maximize();
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  return positive_part(idx, sol.values);
}

std::optional<HullCertificate> relative_interior_membership(const PointSet& e, const RelPoint& x) {
  require_dim(e, x);
  const auto idx = e.distinct_indices();
  const std::size_t n = idx.size();
  if (n == 1) {
    if (e[idx[0]] != x) return std::nullopt;
    return HullCertificate{{idx[0]}, {Scalar(1)}};
  }
  // weights w_i = mu_i + t with mu_i >= 0; maximize the common floor t.
  lp::LinearProgram prog;
  for (std::size_t i = 0; i < n; ++i) prog.add_variable();
  const std::size_t t = prog.add_variable();
  prog.set_objective(t, Scalar(1));
  for (std::size_t j = 0; j < e.dim(); ++j) {
    Vector row(n + 1);
    Scalar total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      row[i] = e[idx[i]][j];
      total += row[i];
    }
    row[n] = total;
    prog.add_constraint(std::move(row), lp::Sense::Equal, x[j]);
  }
  Vector ones(n + 1, Scalar(1));
  ones[n] = Scalar(static_cast<long>(n));
  prog.add_constraint(std::move(ones), lp::Sense::Equal, Scalar(1));
  const auto sol = prog.maximize();
  if (sol.status != lp::Status::Optimal || sol.objective <= 0) return std::nullopt;
  HullCertificate cert;
  for (std::size_t i = 0; i < n; ++i) {
    cert.indices.push_back(idx[i]);
    cert.weights.push_back(sol.values[i] + sol.values[t]);
  }
  return cert;
}

DisperseVerdict is_disperse(const PointSet& e) {
  const auto idx = e.distinct_indices();
  if (idx.size() == 1) {
    const RelPoint& y = e[idx[0]];
    if (is_zero(y)) return {};
    return {SeparationCertificate{normalize_box(y), SeparationKind::WeakArbitrageWitness}};
  }
  // maximize h . sum(y) subject to h . y >= 0 for all y, -1 <= h_j <= 1.
  lp::LinearProgram prog;
  for (std::size_t j = 0; j < e.dim(); ++j) prog.add_variable(Scalar(-1), Scalar(1));
  Vector total = zeros(e.dim());
  for (std::size_t i : idx) {
    prog.add_constraint(e[i], lp::Sense::GreaterEqual, Scalar(0));
    total = add(total, e[i]);
  }
  for (std::size_t j = 0; j < e.dim(); ++j) prog.set_objective(j, total[j]);
  const auto sol = prog.maximize();
  if (sol.status != lp::Status::Optimal) throw std::logic_error("dispersion LP must be feasible and bounded");
  if (sol.objective <= 0) return {};
  return {SeparationCertificate{sol.values, SeparationKind::WeakArbitrageWitness}};
}

ZeroNeutralVerdict is_zero_neutral_set(const PointSet& e) {
  ZeroNeutralVerdict v;
  v.membership = hull_membership(e, zeros(e.dim()));
  if (v.membership) return v;
  // 0 outside a closed polytope: some h has h . y >= 1 on every point.
  lp::LinearProgram prog;
  for (std::size_t j = 0; j < e.dim(); ++j) prog.add_variable(std::nullopt, std::nullopt);
  for (std::size_t i : e.distinct_indices()) prog.add_constraint(e[i], lp::Sense::GreaterEqual, Scalar(1));
  const auto sol = prog.maximize();
  if (sol.status != lp::Status::Optimal) throw std::logic_error("separation LP infeasible although 0 is outside the hull");
  v.separator = SeparationCertificate{sol.values, SeparationKind::StrictSeparator};
  return v;
}

HullCertificate caratheodory_reduce(const PointSet& e, const HullCertificate& cert) {
  if (!certificate_well_formed(e, cert)) throw std::invalid_argument("invalid hull certificate");
  const std::size_t limit = e.dim() + 1;
  if (cert.indices.size() <= limit) return cert;

  HullCertificate cur;
  for (std::size_t i = 0; i < cert.indices.size(); ++i) {
    if (cert.weights[i] != 0) {
      cur.indices.push_back(cert.indices[i]);
      cur.weights.push_back(cert.weights[i]);
    }
  }
  while (cur.indices.size() > limit) {
    const std::size_t k = cur.indices.size();
    // Columns (y_i, 1): a kernel vector is an affine dependence.
    Matrix m(limit, Vector(k));
    for (std::size_t c = 0; c < k; ++c) {
      const RelPoint& y = e[cur.indices[c]];
      for (std::size_t r = 0; r < e.dim(); ++r) m[r][c] = y[r];
      m[e.dim()][c] = 1;
    }
    auto alpha = kernel_vector(std::move(m), k);
    if (!alpha) throw std::logic_error("more than dim+1 points must be affinely dependent");
    if (std::none_of(alpha->begin(), alpha->end(), [](const Scalar& a) { return a > 0; })) {
      for (auto& a : *alpha) a = -a;
    }
    std::optional<Scalar> theta;
    for (std::size_t c = 0; c < k; ++c) {
      if ((*alpha)[c] > 0) {
        Scalar r = cur.weights[c] / (*alpha)[c];
        if (!theta || r < *theta) theta = r;
      }
    }
    HullCertificate next;
    for (std::size_t c = 0; c < k; ++c) {
      Scalar w = cur.weights[c] - *theta * (*alpha)[c];
      if (w != 0) {
        next.indices.push_back(cur.indices[c]);
        next.weights.push_back(std::move(w));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

namespace {

// Parameter t with x = t a + (1 - t) b, if it exists.
std::optional<Scalar> segment_parameter(const RelPoint& x, const RelPoint& a, const RelPoint& b) {
  if (x.size() != a.size() || a.size() != b.size()) throw std::invalid_argument("dimension mismatch in segment test");
  std::optional<Scalar> t;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] != b[j]) {
      t = (x[j] - b[j]) / (a[j] - b[j]);
      break;
    }
  }
  if (!t) return std::nullopt;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (*t * a[j] + (1 - *t) * b[j] != x[j]) return std::nullopt;
  }
  return t;
}

}  // namespace

bool open_segment_member(const RelPoint& x, const RelPoint& a, const RelPoint& b) {
  if (a == b) {
    if (x.size() != a.size()) throw std::invalid_argument("dimension mismatch in segment test");
    return x == a;
  }
  const auto t = segment_parameter(x, a, b);
  return t && *t > 0 && *t < 1;
}

bool closed_segment_member(const RelPoint& x, const RelPoint& a, const RelPoint& b) {
  if (a == b) {
    if (x.size() != a.size()) throw std::invalid_argument("dimension mismatch in segment test");
    return x == a;
  }
  const auto t = segment_parameter(x, a, b);
  return t && *t >= 0 && *t <= 1;
}

}  // namespace noarb

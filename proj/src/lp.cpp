#include "noarb/lp.hpp"

#include <stdexcept>

namespace noarb::lp {

namespace {

struct Tableau {
  std::vector<Vector> rows;  // each row: columns..., rhs
  Vector obj;                // reduced costs..., objective value
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  const Scalar& rhs(std::size_t r) const { return rows[r][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    Vector& prow = rows[r];
    const Scalar inv = 1 / prow[c];
    for (auto& e : prow) {
      if (e != 0) e *= inv;
    }
    auto eliminate = [&](Vector& target) {
      if (target[c] == 0) return;
      const Scalar f = target[c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (prow[j] != 0) target[j] -= f * prow[j];
      }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r) eliminate(rows[i]);
    }
    eliminate(obj);
    basis[r] = c;
  }

  void load_costs(const Vector& costs) {
    obj.assign(cols + 1, Scalar(0));
    for (std::size_t j = 0; j < cols; ++j) obj[j] = -costs[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Scalar& cb = costs[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) {
        if (rows[i][j] != 0) obj[j] += cb * rows[i][j];
      }
    }
  }

  // Maximizes with Bland's rule. Returns false when unbounded.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t entering = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (allowed[j] && obj[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols) return true;
      std::size_t leaving = rows.size();
      Scalar best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Scalar& a = rows[i][entering];
        if (a <= 0) continue;
        Scalar ratio = rhs(i) / a;
        if (leaving == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      if (leaving == rows.size()) return false;
      pivot(leaving, entering);
    }
  }
};

// x_j = offset + sum(coef * y_col)
struct VarMap {
  Scalar offset;
  std::vector<std::pair<std::size_t, Scalar>> terms;
};

}  // namespace

std::size_t LinearProgram::add_variable(std::optional<Scalar> lower, std::optional<Scalar> upper) {
  lower_.push_back(std::move(lower));
  upper_.push_back(std::move(upper));
  objective_.push_back(Scalar(0));
  return lower_.size() - 1;
}

void LinearProgram::add_constraint(Vector coeffs, Sense sense, Scalar rhs) {
  if (coeffs.size() > lower_.size()) throw std::invalid_argument("constraint references unknown variable");
  rows_.push_back({std::move(coeffs), sense, std::move(rhs)});
}

void LinearProgram::set_objective(std::size_t var, Scalar coeff) {
  if (var >= objective_.size()) throw std::invalid_argument("objective references unknown variable");
  objective_[var] = std::move(coeff);
}

Solution LinearProgram::maximize() const {
  const std::size_t nvars = lower_.size();

  // Standard-form columns for the original variables.
  std::vector<VarMap> maps(nvars);
  std::size_t ycols = 0;
  struct BoundRow {
    std::size_t col;
    Scalar cap;
  };
  std::vector<BoundRow> bound_rows;
  for (std::size_t j = 0; j < nvars; ++j) {
    if (lower_[j]) {
      maps[j].offset = *lower_[j];
      maps[j].terms.push_back({ycols, Scalar(1)});
      if (upper_[j]) bound_rows.push_back({ycols, *upper_[j] - *lower_[j]});
      ++ycols;
    } else if (upper_[j]) {
      maps[j].offset = *upper_[j];
      maps[j].terms.push_back({ycols++, Scalar(-1)});
    } else {
      maps[j].offset = 0;
      maps[j].terms.push_back({ycols++, Scalar(1)});
      maps[j].terms.push_back({ycols++, Scalar(-1)});
    }
  }

  struct StdRow {
    Vector coeffs;  // over y columns
    Sense sense;
    Scalar rhs;
  };
  std::vector<StdRow> std_rows;
  for (const auto& row : rows_) {
    StdRow s{Vector(ycols, Scalar(0)), row.sense, row.rhs};
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
      const Scalar& a = row.coeffs[j];
      if (a == 0) continue;
      s.rhs -= a * maps[j].offset;
      for (const auto& [col, coef] : maps[j].terms) s.coeffs[col] += a * coef;
    }
    std_rows.push_back(std::move(s));
  }
  for (const auto& b : bound_rows) {
    StdRow s{Vector(ycols, Scalar(0)), Sense::LessEqual, b.cap};
    s.coeffs[b.col] = 1;
    std_rows.push_back(std::move(s));
  }

  const std::size_t m = std_rows.size();
  std::size_t slack_count = 0;
  for (const auto& r : std_rows) slack_count += r.sense != Sense::Equal;

  // Signs after rhs normalization decide which rows start on their slack.
  std::vector<bool> flip(m);
  std::size_t art_count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    flip[i] = std_rows[i].rhs < 0;
    const bool slack_positive =
        (std_rows[i].sense == Sense::LessEqual && !flip[i]) ||
        (std_rows[i].sense == Sense::GreaterEqual && flip[i]);
    art_count += !slack_positive;
  }

  Tableau t;
  t.cols = ycols + slack_count + art_count;
  t.rows.assign(m, Vector(t.cols + 1, Scalar(0)));
  t.basis.assign(m, 0);
  std::vector<bool> is_art(t.cols, false);
  std::size_t next_slack = ycols;
  std::size_t next_art = ycols + slack_count;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = t.rows[i];
    const auto& src = std_rows[i];
    const Scalar sign = flip[i] ? Scalar(-1) : Scalar(1);
    for (std::size_t c = 0; c < ycols; ++c) {
      if (src.coeffs[c] != 0) row[c] = sign * src.coeffs[c];
    }
    row[t.cols] = sign * src.rhs;
    bool has_basic = false;
    if (src.sense != Sense::Equal) {
      const Scalar coef = (src.sense == Sense::LessEqual ? Scalar(1) : Scalar(-1)) * sign;
      row[next_slack] = coef;
      if (coef == 1) {
        t.basis[i] = next_slack;
        has_basic = true;
      }
      ++next_slack;
    }
    if (!has_basic) {
      row[next_art] = 1;
      is_art[next_art] = true;
      t.basis[i] = next_art++;
    }
  }

  std::vector<bool> allowed(t.cols, true);
  if (art_count > 0) {
    Vector costs(t.cols, Scalar(0));
    for (std::size_t j = 0; j < t.cols; ++j) {
      if (is_art[j]) costs[j] = -1;
    }
    t.load_costs(costs);
    t.run(allowed);
    if (t.obj[t.cols] < 0) return Solution{Status::Infeasible, {}, Scalar(0)};

    // Drive zero-level artificials out of the basis; drop redundant rows.
    std::vector<bool> keep(t.rows.size(), true);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (!is_art[t.basis[i]]) continue;
      std::size_t col = t.cols;
      for (std::size_t j = 0; j < t.cols; ++j) {
        if (!is_art[j] && t.rows[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == t.cols) {
        keep[i] = false;
      } else {
        t.pivot(i, col);
      }
    }
    std::vector<Vector> rows;
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (!keep[i]) continue;
      rows.push_back(std::move(t.rows[i]));
      basis.push_back(t.basis[i]);
    }
    t.rows = std::move(rows);
    t.basis = std::move(basis);
    for (std::size_t j = 0; j < t.cols; ++j) allowed[j] = !is_art[j];
  }

  Vector costs(t.cols, Scalar(0));
  Scalar constant = 0;
  for (std::size_t j = 0; j < nvars; ++j) {
    const Scalar& o = objective_[j];
    if (o == 0) continue;
    constant += o * maps[j].offset;
    for (const auto& [col, coef] : maps[j].terms) costs[col] += o * coef;
  }
  t.load_costs(costs);
  if (!t.run(allowed)) return Solution{Status::Unbounded, {}, Scalar(0)};

  Vector y(t.cols, Scalar(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) y[t.basis[i]] = t.rhs(i);
  Solution sol{Status::Optimal, Vector(nvars), t.obj[t.cols] + constant};
  for (std::size_t j = 0; j < nvars; ++j) {
    Scalar v = maps[j].offset;
    for (const auto& [col, coef] : maps[j].terms) v += coef * y[col];
    sol.values[j] = std::move(v);
  }
  return sol;
}

}  // namespace noarb::lp

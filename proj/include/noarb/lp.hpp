#pragma once

#include <cstddef>
#include <optional>

#include "noarb/scalar.hpp"

namespace noarb::lp {

enum class Sense { LessEqual, GreaterEqual, Equal };
enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Vector values;    // one per variable, meaningful when Optimal
  Scalar objective; // maximized value, meaningful when Optimal
};

/// Dense two-phase primal simplex over exact rationals. Bland's rule in both
/// phases, so degenerate problems cannot cycle.
///
/// Variables carry optional lower/upper bounds (free when both are absent);
/// the problem is rewritten into standard form internally. The objective is
/// always maximized.
class LinearProgram {
 public:
  std::size_t add_variable(std::optional<Scalar> lower = Scalar(0),
                           std::optional<Scalar> upper = std::nullopt);

  /// `coeffs` may be shorter than the variable count; missing entries are 0.
  void add_constraint(Vector coeffs, Sense sense, Scalar rhs);

  void set_objective(std::size_t var, Scalar coeff);

  std::size_t variable_count() const { return lower_.size(); }

  Solution maximize() const;

 private:
  std::vector<std::optional<Scalar>> lower_, upper_;
  struct Row {
    Vector coeffs;
    Sense sense;
    Scalar rhs;
  };
  std::vector<Row> rows_;
  Vector objective_;
};

}  // namespace noarb::lp

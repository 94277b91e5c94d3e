#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "noarb/classify.hpp"
#include "noarb/market.hpp"
#include "noarb/symmetry.hpp"

namespace noarb {

// Four assets (C, P, Y, B): call, put, underlying, bond. B is the numeraire,
// so relative prices are x = (C/B, P/B, Y/B).
inline constexpr std::size_t kParityDim = 3;
inline constexpr std::size_t kBond = 3;

/// Leaf when `Y` is set; otherwise children with convex weights.
struct ParityTree {
  std::optional<Scalar> Y;
  std::vector<ParityTree> children;
  std::vector<Scalar> weights;
};

struct ParitySpec {
  Scalar strike{1};
  std::optional<std::vector<Scalar>> times;  // t_0 < ... < t_m, stored as tags
  std::optional<std::vector<Scalar>> bond;   // B per stage, last == strike
  ParityTree tree;
  std::optional<Vector> root_offset;  // added to the root prices
};

/// One step from the root to the given terminal underlying values.
ParitySpec one_step_spec(const Scalar& strike, const std::vector<Scalar>& terminal, const std::vector<Scalar>& weights);
/// K = 1, Y_T in {2, 1/2}, equal weights.
ParitySpec demo_spec();

/// Terminal C = (Y-K)+, P = (K-Y)+, B = K; interior relative prices are the
/// weighted combination of the children's. Throws std::invalid_argument on
/// bad weights, unequal leaf depths or a non-positive bond.
TrajectorySet build_parity_market(const ParitySpec& spec);

/// x1 - x2 - x3 + 1.
Scalar pi_functional(const RelPoint& x);

struct ParityReport {
  std::vector<std::string> boundary_issues;
  MarketVerdict verdict;
  std::vector<NodeRef> not_zero_neutral;
  std::vector<NodeRef> derivation_failures;  // induction step did not close
  std::vector<NodeRef> pi_failures;          // direct pi != 0
  bool holds() const {
    return boundary_issues.empty() && not_zero_neutral.empty() && derivation_failures.empty() && pi_failures.empty();
  }
};

/// Terminal boundary (C = (Y-B)+, P = (B-Y)+, common B across trajectories,
/// pi = 0), 0-neutrality of every node, the backward induction through the
/// hull certificates, and pi(X(S_i)) = 0 at every stage i <= M.
ParityReport verify_parity(const Market& m);

/// L(s) = (s1, s0, s3, s2) with multiplier 1/s3:
/// f(s) = (s1, s0, s3, s2) / (s2 s3).
FractionalTransform parity_swap_nas();

struct ParityFactor {
  Scalar a_F;
  std::optional<NodeRef> failure;  // first stage where the identity breaks
  bool holds() const { return !failure.has_value(); }
};

/// a_F from the 4x4 matrix rebuilt from (A, b, B, c), and the identity
/// pi(F(x)) (B.x + c) = a_F pi(x) at every stage of every trajectory.
ParityFactor transformed_parity_factor(const Matrix& A, const Vector& b, const Vector& B, const Scalar& c, const Market& m);
ParityFactor transformed_parity_factor(const InducedMap& f, const Market& m);

/// Matrix obeying the coefficient relations with a_F = a: rows r1, r2, r3
/// are free (r3 must be positive on the market) and
/// r0 = a(1,-1,-1,1) + r1 + r2 - r3.
Matrix boundary_invariant_matrix(const Scalar& a, const Vector& r1, const Vector& r2, const Vector& r3);

struct ParityLabReport {
  ParityReport source;
  SymmetryReport nas;
  ParityReport transformed;
  ParityFactor identity_factor;
  ParityFactor nas_factor;
  bool holds() const {
    return source.holds() && nas.holds() && transformed.holds() && identity_factor.holds() && nas_factor.holds() &&
           identity_factor.a_F == 1 && nas_factor.a_F == -1;
  }
};

ParityLabReport run_parity_lab(const ParitySpec& spec);

}  // namespace noarb

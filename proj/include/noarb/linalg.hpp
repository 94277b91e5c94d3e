#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "noarb/scalar.hpp"

namespace noarb {

Vector zeros(std::size_t n);
bool is_zero(std::span<const Scalar> v);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Vector add(std::span<const Scalar> a, std::span<const Scalar> b);
Vector sub(std::span<const Scalar> a, std::span<const Scalar> b);
Vector scale(const Scalar& s, std::span<const Scalar> v);

/// y = M x.
Vector multiply(const Matrix& m, std::span<const Scalar> x);
/// C = A B.
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix identity(std::size_t n);

/// Exact rank by Gaussian elimination over the rationals.
std::size_t rank(Matrix m);

/// A nonzero x with M x = 0, if the kernel is nontrivial. `cols` is needed
/// when M has no rows.
std::optional<Vector> kernel_vector(Matrix m, std::size_t cols);

std::string to_string(std::span<const Scalar> v);

}  // namespace noarb

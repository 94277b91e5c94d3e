#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace noarb {

/// Exact rational number. GMP keeps every value in lowest terms with a
/// positive denominator.
using Scalar = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using Vector = std::vector<Scalar>;
/// Row-major dense matrix.
using Matrix = std::vector<Vector>;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p", "p/q" or "-p/q" (decimal digits, q != 0). Accepts
/// non-reduced input and reduces it.
Scalar parse_scalar(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Scalar& value);

Scalar make_scalar(long long num, long long den = 1);

}  // namespace noarb

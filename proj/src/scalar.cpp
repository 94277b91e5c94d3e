#include "noarb/scalar.hpp"

#include <cctype>

namespace noarb {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  Integer p{std::string(num)};
  Integer q{std::string(den)};
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) p = -p;
  return Scalar(p, q);
}

std::string to_string(const Scalar& value) {
  const Integer p = boost::multiprecision::numerator(value);
  const Integer q = boost::multiprecision::denominator(value);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

Scalar make_scalar(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Scalar(Integer(num), Integer(den));
}

}  // namespace noarb

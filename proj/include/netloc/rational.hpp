#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netloc {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// Comparison tolerance for the binary64 flavor.
inline constexpr double kFloatTolerance = 1e-12;

/// Thrown when a computation would exceed a configured size cap.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses "num/den", "num" or a decimal literal such as "0.25".
Rational parse_rational(std::string_view text);

/// Renders as "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double x, std::int64_t max_den);

/// Tolerant or exact equality depending on the scalar type.
inline bool approx_equal(const Rational& a, const Rational& b) { return a == b; }
inline bool approx_equal(double a, double b) {
  double diff = a - b;
  return diff <= kFloatTolerance && diff >= -kFloatTolerance;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

} // namespace netloc

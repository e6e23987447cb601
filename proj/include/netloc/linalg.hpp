#pragma once

// Dense exact linear algebra over the rationals.

#include "netloc/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace netloc {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>; // row-major

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Rank of {(1, p) : p in points}, i.e. affine dimension + 1 (0 for no points).
std::size_t affine_rank(const std::vector<RationalVector>& points);

/// A nonzero vector c with M c = 0 whose lowest free column has c = 1, or
/// nothing when the columns are independent.
std::optional<RationalVector> first_null_vector(const RationalMatrix& m);

/// Scales a nonzero vector to a primitive integer vector with the same sign.
RationalVector primitive_integer(const RationalVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);

} // namespace netloc

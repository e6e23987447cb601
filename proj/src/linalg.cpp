#include "netloc/linalg.hpp"

#include <stdexcept>

namespace netloc {

std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m) { return row_reduce(m).size(); }

std::size_t affine_rank(const std::vector<RationalVector>& points) {
  if (points.empty()) return 0;
  RationalMatrix m;
  m.reserve(points.size());
  for (const auto& p : points) {
    RationalVector row;
    row.reserve(p.size() + 1);
    row.emplace_back(1);
    row.insert(row.end(), p.begin(), p.end());
    m.push_back(std::move(row));
  }
  return rank(std::move(m));
}

std::optional<RationalVector> first_null_vector(const RationalMatrix& m) {
  if (m.empty()) return std::nullopt;
  RationalMatrix work = m;
  auto pivots = row_reduce(work);
  const std::size_t cols = m.front().size();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t free_col = cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  if (free_col == cols) return std::nullopt;
  RationalVector v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work[r][free_col];
  return v;
}

RationalVector primitive_integer(const RationalVector& v) {
  mpz_class den_lcm = 1;
  for (const auto& q : v)
    if (sgn(q) != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  mpz_class num_gcd = 0;
  std::vector<mpz_class> scaled;
  scaled.reserve(v.size());
  for (const auto& q : v) {
    mpz_class z = q.get_num() * (den_lcm / q.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), z.get_mpz_t());
    scaled.push_back(std::move(z));
  }
  if (num_gcd == 0) throw std::domain_error("cannot normalize the zero vector");
  RationalVector out;
  out.reserve(v.size());
  for (auto& z : scaled) out.emplace_back(mpz_class(z / num_gcd));
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::domain_error("dot product of vectors with different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

} // namespace netloc

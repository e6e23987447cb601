#include "netloc/lp.hpp"

#include <stdexcept>

namespace netloc {

namespace {

// Tableau over columns [0, n) original, [n, n+m) artificial, column n+m = rhs.
// Row `m` holds reduced costs with the negated objective value in the rhs slot.
class Tableau {
public:
  Tableau(const LinearProgram& lp, std::vector<bool>& flipped) : m_(lp.A.size()), n_(lp.c.size()) {
    width_ = n_ + m_ + 1;
    t_.assign(m_ + 1, RationalVector(width_, Rational(0)));
    basis_.resize(m_);
    flipped.assign(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      bool neg = sgn(lp.b[i]) < 0;
      flipped[i] = neg;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = neg ? Rational(-lp.A[i][j]) : lp.A[i][j];
      t_[i][n_ + i] = 1;
      t_[i][width_ - 1] = neg ? Rational(-lp.b[i]) : lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  void set_costs(const RationalVector& cost) {
    auto& z = t_[m_];
    for (std::size_t j = 0; j < width_; ++j) z[j] = j < cost.size() ? cost[j] : Rational(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational cb = basis_[i] < cost.size() ? cost[basis_[i]] : Rational(0);
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(t_[i][j]) != 0) z[j] -= cb * t_[i][j];
    }
  }

  // Returns false on unboundedness.
  bool optimize(std::size_t allowed_columns, std::size_t& pivots) {
    for (;;) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < allowed_columns; ++j)
        if (sgn(t_[m_][j]) < 0) {
          enter = j;
          break;
        }
      if (enter == width_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / t_[row][col];
    for (auto& v : t_[row])
      if (sgn(v) != 0) v *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row || sgn(t_[i][col]) == 0) continue;
      Rational f = t_[i][col];
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(t_[row][j]) != 0) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = col;
  }

  // Pivots basic artificials out where possible; rows that cannot be cleared
  // are linear combinations of the others and stay with a zero artificial.
  void expel_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          ++pivots;
          break;
        }
    }
  }

  RationalVector primal() const {
    RationalVector x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][width_ - 1];
    return x;
  }

  Rational objective() const { return -t_[m_][width_ - 1]; }

  // Duals of the phase-one objective, read off the artificial reduced costs.
  RationalVector phase_one_duals() const {
    RationalVector y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = 1 - t_[m_][n_ + i];
    return y;
  }

private:
  std::size_t m_, n_, width_;
  RationalMatrix t_;
  std::vector<std::size_t> basis_;
};

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.A.size();
  std::size_t n = lp.c.size();
  if (m == 0) throw std::domain_error("linear program has no constraints");
  if (n == 0) n = lp.A.front().size();
  if (lp.b.size() != m) throw std::domain_error("right-hand side length mismatch");
  for (const auto& row : lp.A)
    if (row.size() != n) throw std::domain_error("constraint rows differ in length");

  LinearProgram normalized = lp;
  if (normalized.c.empty()) normalized.c.assign(n, Rational(0));

  std::vector<bool> flipped;
  Tableau tab(normalized, flipped);
  LpResult result;

  RationalVector phase_one(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase_one[n + i] = 1;
  tab.set_costs(phase_one);
  tab.optimize(n + m, result.pivots);

  if (sgn(tab.objective()) > 0) {
    result.status = LpStatus::Infeasible;
    result.farkas = tab.phase_one_duals();
    for (std::size_t i = 0; i < m; ++i)
      if (flipped[i]) result.farkas[i] = -result.farkas[i];
    return result;
  }

  tab.expel_artificials(result.pivots);
  tab.set_costs(normalized.c);
  if (!tab.optimize(n, result.pivots)) {
    result.status = LpStatus::Unbounded;
    result.x = tab.primal();
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = tab.primal();
  result.objective = tab.objective();
  return result;
}

} // namespace netloc

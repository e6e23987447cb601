#include "netloc/rational.hpp"

#include <cmath>
#include <limits>

namespace netloc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

} // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("bad decimal literal '" + std::string(text) + "'");
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  if (max_den < 1) throw std::invalid_argument("denominator cap must be positive");

  // Convergents h/k of the continued fraction of x, stopping at the cap; the
  // last admissible semiconvergent is compared against the last convergent.
  Rational target(x);
  mpz_class h_prev = 1, h = mpz_class(static_cast<long>(std::floor(x)));
  mpz_class k_prev = 0, k = 1;
  Rational rem = target - Rational(h);
  while (rem != 0) {
    Rational inv = 1 / rem;
    mpz_class a = inv.get_num() / inv.get_den();
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) {
      mpz_class t = (mpz_class(max_den) - k_prev) / k;
      Rational best(h, k);
      if (t > 0) {
        Rational semi(t * h + h_prev, t * k + k_prev);
        semi.canonicalize();
        if (abs(semi - target) < abs(best - target)) return semi;
      }
      best.canonicalize();
      return best;
    }
    mpz_class h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    rem = inv - Rational(a);
  }
  Rational out(h, k);
  out.canonicalize();
  return out;
}

} // namespace netloc

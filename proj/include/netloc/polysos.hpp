#pragma once

// Bilocal correlator model with inefficient detectors and the exact
// certificate that it needs eta <= 2/3.

#include "netloc/multipoly.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace netloc {

/// Variable slots shared by every polynomial in this module.
enum PolyVar : std::size_t { kEta = 0, kXi = 1, kZeta = 2, kF1 = 3, kF2 = 4 };
inline constexpr std::size_t kPolyVars = 5;

const std::vector<std::string>& poly_var_names();
/// Names used when xi and zeta slots hold xi-bar = 1 - xi and zeta-bar = 1 + zeta.
const std::vector<std::string>& bar_var_names();

MultiPoly pv(PolyVar v);
MultiPoly pc(const Rational& c);
MultiPoly xi_bar();   // 1 - xi
MultiPoly zeta_bar(); // 1 + zeta

/// Rewrites p in the slots (eta, xi-bar, zeta-bar, f1, f2).
MultiPoly to_bar_coordinates(const MultiPoly& p);
std::string format_poly(const MultiPoly& p);
std::string format_bar(const MultiPoly& p);

/// <A-part B-part C-part> for every monomial selection. Masks: bit 0 selects
/// the index-0 operator, bit 1 the index-1 operator.
struct CorrelatorTable {
  std::array<MultiPoly, 64> entries;

  const MultiPoly& at(int a, int b, int c) const { return entries[static_cast<std::size_t>(a * 16 + b * 4 + c)]; }
  MultiPoly& at(int a, int b, int c) { return entries[static_cast<std::size_t>(a * 16 + b * 4 + c)]; }
};

/// Symmetrized bilocal model. Without Bob, A and C factorize; the only free
/// moments are <A0A1> = zeta, <C0C1> = xi, <A0A1 B0 C0> = f2 and
/// <A0 B1 C0C1> = f1.
CorrelatorTable build_model_table();

/// P(alpha0 alpha1 beta0 beta1 gamma0 gamma1) as
/// (1/64) sum over monomials of sign * correlator; `times64` drops the 1/64.
MultiPoly probability_from_signs(const CorrelatorTable& table, const std::array<int, 6>& signs,
                                 bool times64 = false);

/// g1 ... g6: 64 P at the six sign patterns used by the certificate.
std::array<MultiPoly, 6> g_polynomials(const CorrelatorTable& table);
std::array<std::array<int, 6>, 6> g_sign_patterns();
std::string format_signs(const std::array<int, 6>& signs);

class CertificateError : public std::runtime_error {
public:
  CertificateError(const std::string& identity, const MultiPoly& difference);
  const MultiPoly& difference() const { return difference_; }

private:
  MultiPoly difference_;
};

struct IdentityCheck {
  std::string group; // "i" ... "v"
  std::string name;
  std::string lhs;
  std::string rhs;
};

/// coefficient * base^2
struct SquareTerm {
  Rational coefficient;
  MultiPoly base;
};

struct ConicTerm {
  std::string label; // a sign pattern or a named combination
  Rational coefficient;
};

struct CertificateReport {
  std::string overline_reading;
  std::vector<IdentityCheck> identities;
  std::vector<std::string> branches;
  std::vector<ConicTerm> conic;
  std::vector<SquareTerm> squares;
  std::vector<std::string> transcript;
  Rational bound;
};

/// Checks every identity of the certificate exactly and throws
/// CertificateError with the difference polynomial on the first failure.
CertificateReport verify_bilocal_certificate();

enum class Branch { ZetaBarIsTwoEta, XiBarIsTwoEta };

std::string branch_name(Branch b);

/// Exact LP over constant multipliers of all 64 probability polynomials plus
/// nonnegative multiples of squares from a fixed dictionary of degree-2
/// binomials, matching bound - eta coefficientwise on the branch.
std::optional<CertificateReport> search_certificate(Branch branch, const Rational& bound = Rational(2, 3));

} // namespace netloc

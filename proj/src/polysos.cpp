#include "netloc/polysos.hpp"

#include "netloc/lp.hpp"

#include <map>
#include <set>

namespace netloc {

const std::vector<std::string>& poly_var_names() {
  static const std::vector<std::string> names{"eta", "xi", "zeta", "f1", "f2"};
  return names;
}

const std::vector<std::string>& bar_var_names() {
  static const std::vector<std::string> names{"eta", "xib", "zetab", "f1", "f2"};
  return names;
}

MultiPoly pv(PolyVar v) { return MultiPoly::variable(kPolyVars, v); }
MultiPoly pc(const Rational& c) { return MultiPoly::constant(kPolyVars, c); }
MultiPoly xi_bar() { return pc(1) - pv(kXi); }
MultiPoly zeta_bar() { return pc(1) + pv(kZeta); }

MultiPoly to_bar_coordinates(const MultiPoly& p) {
  // xi = 1 - xib, zeta = zetab - 1
  return p.substitute(kXi, pc(1) - pv(kXi)).substitute(kZeta, pv(kZeta) - pc(1));
}

std::string format_poly(const MultiPoly& p) { return p.to_string(poly_var_names()); }
std::string format_bar(const MultiPoly& p) { return to_bar_coordinates(p).to_string(bar_var_names()); }

CorrelatorTable build_model_table() {
  const MultiPoly eta = pv(kEta);
  const MultiPoly one = pc(1);
  const MultiPoly half_sq = eta * eta * Rational(1, 2);
  const std::array<MultiPoly, 4> alice{one, eta - one, one - eta, pv(kZeta)};
  const std::array<MultiPoly, 4> charlie{one, one - eta, one - eta, pv(kXi)};

  CorrelatorTable t;
  for (auto& e : t.entries) e = MultiPoly(kPolyVars);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) t.at(a, 0, c) = alice[static_cast<std::size_t>(a)] * charlie[static_cast<std::size_t>(c)];

  t.at(1, 1, 1) = half_sq;
  t.at(1, 1, 2) = -half_sq;
  t.at(2, 1, 1) = -half_sq;
  t.at(2, 1, 2) = half_sq;
  t.at(3, 1, 1) = pv(kF2);
  t.at(3, 1, 2) = -pv(kF2);

  for (int a : {1, 2})
    for (int c : {1, 2}) t.at(a, 2, c) = half_sq;
  t.at(1, 2, 3) = pv(kF1);
  t.at(2, 2, 3) = pv(kF1);
  // <... B0B1 ...> vanishes throughout.
  return t;
}

MultiPoly probability_from_signs(const CorrelatorTable& table, const std::array<int, 6>& s, bool times64) {
  MultiPoly sum(kPolyVars);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        int sign = 1;
        if (a & 1) sign *= s[0];
        if (a & 2) sign *= s[1];
        if (b & 1) sign *= s[2];
        if (b & 2) sign *= s[3];
        if (c & 1) sign *= s[4];
        if (c & 2) sign *= s[5];
        if (sign > 0) {
          sum += table.at(a, b, c);
        } else {
          sum -= table.at(a, b, c);
        }
      }
  return times64 ? sum : sum / Rational(64);
}

std::array<std::array<int, 6>, 6> g_sign_patterns() {
  return {{{+1, +1, +1, +1, -1, +1},
           {-1, +1, -1, +1, -1, +1},
           {+1, -1, +1, +1, -1, -1},
           {-1, +1, +1, +1, -1, -1},
           {+1, -1, +1, +1, -1, +1},
           {+1, +1, +1, +1, -1, -1}}};
}

std::array<MultiPoly, 6> g_polynomials(const CorrelatorTable& table) {
  std::array<MultiPoly, 6> g;
  auto patterns = g_sign_patterns();
  for (std::size_t i = 0; i < 6; ++i) g[i] = probability_from_signs(table, patterns[i], true);
  return g;
}

std::string format_signs(const std::array<int, 6>& signs) {
  std::string out;
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

CertificateError::CertificateError(const std::string& identity, const MultiPoly& difference)
    : std::runtime_error("identity '" + identity + "' fails; lhs - rhs = " + format_poly(difference)),
      difference_(difference) {}

namespace {

class IdentityLog {
public:
  explicit IdentityLog(CertificateReport& report) : report_(report) {}

  void require(const std::string& group, const std::string& name, const MultiPoly& lhs, const MultiPoly& rhs) {
    MultiPoly diff = lhs - rhs;
    if (!diff.is_zero()) throw CertificateError(name, diff);
    report_.identities.push_back({group, name, format_bar(lhs), format_bar(rhs)});
  }

private:
  CertificateReport& report_;
};

} // namespace

CertificateReport verify_bilocal_certificate() {
  CertificateReport report;
  report.overline_reading = "product: xib*zetab = (1 - xi)(1 + zeta)";
  IdentityLog log(report);

  const auto table = build_model_table();
  const auto g = g_polynomials(table);
  const MultiPoly eta = pv(kEta);
  const MultiPoly xb = xi_bar();
  const MultiPoly zb = zeta_bar();
  const MultiPoly f1 = pv(kF1), f2 = pv(kF2);
  const MultiPoly one = pc(1);
  const MultiPoly two_eta = eta * Rational(2);

  // Closed forms of the six probabilities; g4 carries -4 eta^2.
  log.require("i", "g1 closed form", g[0], xb * zb - (f1 + f2) * Rational(2));
  log.require("i", "g2 closed form", g[1],
              xb * Rational(4) - xb * zb - eta * eta * Rational(2) - eta * xb * Rational(2) - f2 * Rational(2));
  log.require("i", "g3 closed form", g[2], (two_eta - xb) * (two_eta - zb));
  log.require("i", "g4 closed form", g[3], -((two_eta - xb) * (two_eta + zb - pc(4))));
  log.require("i", "g5 closed form", g[4],
              -(eta * eta * Rational(2)) + eta * xb * Rational(2) + f2 * Rational(2) - xb * zb);
  log.require("i", "g6 closed form", g[5],
              -(eta * eta * Rational(2)) + eta * zb * Rational(2) + f1 * Rational(2) - xb * zb);

  const MultiPoly f_plus = g[0] + g[2] * Rational(2) + g[4] + g[5];
  const MultiPoly f_minus = g[0] * Rational(2) + g[2] + g[4] * Rational(2) + g[5] * Rational(2);
  log.require("i", "F+ = g1 + 2g3 + g5 + g6 = (2eta - zetab)(2eta - xib)", f_plus, (two_eta - zb) * (two_eta - xb));
  log.require("i", "F- = 2g1 + g3 + 2g5 + 2g6 = -F+", f_minus, -f_plus);
  report.transcript.push_back("F+ >= 0 and F- = -F+ >= 0 force F+ = (2eta - zetab)(2eta - xib) = 0.");

  const MultiPoly I = (g[0] * Rational(2) + g[1] + g[4] * Rational(3) + g[5] * Rational(2)) / Rational(4);
  const MultiPoly J = (g[2] * Rational(3) + g[3]) / Rational(4);
  log.require("ii", "I = (2g1 + g2 + 3g5 + 2g6)/4", I, xb + eta * xb + eta * zb - xb * zb - eta * eta * Rational(3));
  log.require("ii", "J = (3g3 + g4)/4", J, (two_eta - xb) * (eta - zb + one));

  report.branches.push_back("zetab = 2eta");
  report.branches.push_back("xib = 2eta");
  const MultiPoly zeta_on_branch = two_eta - one; // zetab = 2 eta
  const MultiPoly Ib = I.substitute(kZeta, zeta_on_branch);
  const MultiPoly Jb = J.substitute(kZeta, zeta_on_branch);
  log.require("iii", "I on zetab = 2eta", Ib, xb * (one - eta) - eta * eta);
  log.require("iii", "J on zetab = 2eta", Jb, (one - eta) * (two_eta - xb));

  const MultiPoly p1_base = pc(2) - eta * Rational(3);
  const Rational p1_coeff(1, 6), p2(1, 2), p3(1, 2);
  const MultiPoly K = pc(Rational(2, 3)) - eta;
  log.require("iv", "2/3 - eta = (2 - 3eta)^2/6 + I/2 + J/2", K, p1_base * p1_base * p1_coeff + Ib * p2 + Jb * p3);

  const MultiPoly p1 = p1_base * p1_base * p1_coeff;
  log.require("v", "p1 = (2 - 3eta)^2/6", p1, p1_base.pow(2) / Rational(6));
  if (sgn(p1_coeff) <= 0 || sgn(p2) < 0 || sgn(p3) < 0) throw std::logic_error("negative certificate multiplier");
  report.squares.push_back({p1_coeff, p1_base});
  report.conic.push_back({"I = (2g1 + g2 + 3g5 + 2g6)/4", p2});
  report.conic.push_back({"J = (3g3 + g4)/4", p3});

  // Tight at eta = 2/3, zetab = xib = 4/3.
  const std::vector<Rational> tight{Rational(2, 3), Rational(-1, 3), Rational(1, 3), Rational(0), Rational(0)};
  if (K.evaluate(tight) != 0 || sgn(Ib.evaluate(tight)) < 0 || sgn(Jb.evaluate(tight)) < 0)
    throw std::logic_error("certificate is not tight where expected");

  report.transcript.push_back("On zetab = 2eta: 2/3 - eta = (2 - 3eta)^2/6 + I/2 + J/2 with I, J >= 0.");
  report.transcript.push_back("Hence eta <= 2/3; equality at eta = 2/3, zetab = xib = 4/3.");

  // The other branch: a certificate found by the coefficient-matching search.
  auto other = search_certificate(Branch::XiBarIsTwoEta, Rational(2, 3));
  if (!other) throw std::logic_error("no certificate on the branch xib = 2eta");
  for (auto id : other->identities) {
    id.group = "iv";
    id.name = "xib = 2eta: " + id.name;
    report.identities.push_back(id);
  }
  for (const auto& line : other->transcript) report.transcript.push_back(line);
  report.transcript.push_back("Both branches give eta <= 2/3.");
  report.bound = Rational(2, 3);
  return report;
}

std::string branch_name(Branch b) { return b == Branch::ZetaBarIsTwoEta ? "zetab = 2eta" : "xib = 2eta"; }

std::optional<CertificateReport> search_certificate(Branch branch, const Rational& bound) {
  const auto table = build_model_table();
  const MultiPoly eta = pv(kEta);
  const MultiPoly one = pc(1);
  const MultiPoly two_eta = eta * Rational(2);

  auto on_branch = [&](const MultiPoly& p) {
    return branch == Branch::ZetaBarIsTwoEta ? p.substitute(kZeta, two_eta - one) : p.substitute(kXi, one - two_eta);
  };

  std::vector<MultiPoly> columns;
  std::vector<ConicTerm> labels;
  std::array<int, 6> signs{};
  for (int code = 0; code < 64; ++code) {
    for (int k = 0; k < 6; ++k) signs[static_cast<std::size_t>(k)] = (code >> (5 - k)) & 1 ? -1 : 1;
    columns.push_back(on_branch(probability_from_signs(table, signs, true)));
    labels.push_back({"64 P(" + format_signs(signs) + ")", Rational(0)});
  }
  const std::size_t conic_count = columns.size();

  // Square dictionary over {1, eta, remaining bar variable, f1, f2}.
  std::vector<MultiPoly> basis{one, eta, branch == Branch::ZetaBarIsTwoEta ? xi_bar() : zeta_bar(), pv(kF1), pv(kF2)};
  std::set<Rational> ratios;
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) {
      Rational r(p, q);
      r.canonicalize();
      ratios.insert(r);
    }
  std::vector<MultiPoly> bases;
  for (const auto& b : basis) bases.push_back(b);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      for (const auto& r : ratios) {
        bases.push_back(basis[i] + basis[j] * r);
        bases.push_back(basis[i] - basis[j] * r);
      }
  for (const auto& b : bases) columns.push_back(b * b);

  const MultiPoly target = pc(bound) - eta;
  std::map<MultiPoly::Exponents, std::size_t, GradedLex> rows;
  for (const auto& c : columns)
    for (const auto& [e, v] : c.terms()) rows.emplace(e, 0);
  for (const auto& [e, v] : target.terms()) rows.emplace(e, 0);
  std::size_t r = 0;
  for (auto& [e, idx] : rows) idx = r++;

  LinearProgram lp;
  lp.A.assign(rows.size(), RationalVector(columns.size(), Rational(0)));
  lp.b.assign(rows.size(), Rational(0));
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (const auto& [e, v] : columns[k].terms()) lp.A[rows.at(e)][k] = v;
  for (const auto& [e, v] : target.terms()) lp.b[rows.at(e)] = v;

  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;

  CertificateReport report;
  report.overline_reading = "product: xib*zetab = (1 - xi)(1 + zeta)";
  report.branches.push_back(branch_name(branch));
  MultiPoly total(kPolyVars);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (sgn(res.x[k]) == 0) continue;
    total += columns[k] * res.x[k];
    if (k < conic_count) {
      report.conic.push_back({labels[k].label, res.x[k]});
    } else {
      report.squares.push_back({res.x[k], bases[k - conic_count]});
    }
  }
  if (!(total == target)) throw CertificateError("searched certificate", total - target);
  report.identities.push_back({"iv", "bound - eta = sum of conic and square terms", format_bar(target), format_bar(total)});
  report.transcript.push_back("On " + branch_name(branch) + ": " + format_bar(target) +
                              " equals a nonnegative combination of probabilities and squares.");
  report.bound = bound;
  return report;
}

} // namespace netloc

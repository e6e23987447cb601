#include "netloc/quantumcorr.hpp"

#include "netloc/rational.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace netloc {

namespace {

using cd = std::complex<double>;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

ComplexMatrix projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

Eigen::VectorXcd two_qubit(double c00, double c01, double c10, double c11) {
  Eigen::VectorXcd v(4);
  v << c00, c01, c10, c11;
  return v / std::sqrt(2.0);
}

bool hermitian(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff() < kFloatTolerance; }

void require_projector(const ComplexMatrix& p) {
  if (!hermitian(p) || (p * p - p).cwiseAbs().maxCoeff() > kFloatTolerance)
    throw std::logic_error("Bell projector is not an orthogonal projector");
}

ComplexMatrix pick(const std::array<ComplexMatrix, 2>& ops, int mask) {
  const auto n = ops[0].rows();
  ComplexMatrix m = ComplexMatrix::Identity(n, n);
  if (mask & 1) m = m * ops[0];
  if (mask & 2) m = m * ops[1];
  return m;
}

} // namespace

EffectiveObservables build_operators(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("detection efficiency must lie in [0, 1]");
  ComplexMatrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double r = 1 / std::sqrt(2.0);
  const ComplexMatrix bar0 = r * (sz + sx);
  const ComplexMatrix bar1 = r * (sz - sx);

  EffectiveObservables obs;
  obs.eta = eta;
  obs.A[0] = eta * bar0 - (1 - eta) * id;
  obs.A[1] = eta * bar1 + (1 - eta) * id;
  obs.C[0] = eta * bar0 + (1 - eta) * id;
  obs.C[1] = eta * bar1 + (1 - eta) * id;

  const ComplexMatrix phi_p = projector(two_qubit(1, 0, 0, 1));
  const ComplexMatrix phi_m = projector(two_qubit(1, 0, 0, -1));
  const ComplexMatrix psi_p = projector(two_qubit(0, 1, 1, 0));
  const ComplexMatrix psi_m = projector(two_qubit(0, 1, -1, 0));
  for (const auto* p : {&phi_p, &phi_m, &psi_p, &psi_m}) require_projector(*p);
  obs.B0 = phi_p + psi_p - phi_m - psi_m;
  obs.B1 = phi_p - psi_p + phi_m - psi_m;
  obs.B0B1 = obs.B0 * obs.B1;
  return obs;
}

ComplexMatrix swapping_state() {
  const ComplexMatrix singlet = projector(two_qubit(0, 1, -1, 0));
  return kron(singlet, singlet);
}

double correlator(const EffectiveObservables& obs, int a_mask, int b_mask, int c_mask) {
  if (a_mask < 0 || a_mask > 3 || b_mask < 0 || b_mask > 3 || c_mask < 0 || c_mask > 3)
    throw std::domain_error("monomial masks must lie in 0..3");
  const ComplexMatrix a = pick(obs.A, a_mask);
  const ComplexMatrix c = pick(obs.C, c_mask);
  ComplexMatrix b = ComplexMatrix::Identity(4, 4);
  if (b_mask == 1) b = obs.B0;
  if (b_mask == 2) b = obs.B1;
  if (b_mask == 3) b = obs.B0B1;
  const ComplexMatrix op = kron(kron(a, b), c);
  if (!hermitian(op)) throw std::logic_error("correlator of a non-Hermitian operator: " +
                                             monomial_name(a_mask, b_mask, c_mask));
  static const ComplexMatrix rho = swapping_state();
  const cd value = (rho * op).trace();
  if (std::abs(value.imag()) > kFloatTolerance) throw std::logic_error("correlator has an imaginary part");
  return value.real();
}

double printed_correlator(double eta, int a, int b, int c) {
  const double alice[3] = {1, eta - 1, 1 - eta};
  const double charlie[3] = {1, 1 - eta, 1 - eta};
  const double h = eta * eta / 2;
  switch (b) {
  case 0: return alice[a] * charlie[c];
  case 1:
    if (a == 0 || c == 0) return 0;
    return a == c ? h : -h;
  case 2: return (a == 0 || c == 0) ? 0 : h;
  default: return 0;
  }
}

std::string monomial_name(int a, int b, int c) {
  static const char* an[4] = {"", "A0", "A1", "A0A1"};
  static const char* bn[4] = {"", "B0", "B1", "B0B1"};
  static const char* cn[4] = {"", "C0", "C1", "C0C1"};
  std::string s = std::string(an[a]) + bn[b] + cn[c];
  return "<" + (s.empty() ? std::string("1") : s) + ">";
}

QuantumTable full_table(double eta, bool strict) {
  const auto obs = build_operators(eta);
  QuantumTable t;
  t.eta = eta;
  for (int b = 0; b < 4; ++b)
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) {
        TableEntry e{a, b, c, correlator(obs, a, b, c), printed_correlator(eta, a, b, c)};
        const double err = std::abs(e.value - e.expected);
        t.max_error = std::max(t.max_error, err);
        if (strict && err > kFloatTolerance)
          throw std::runtime_error("table entry " + monomial_name(a, b, c) + " is " + std::to_string(e.value) +
                                   ", expected " + std::to_string(e.expected));
        t.entries.push_back(e);
      }
  return t;
}

std::array<double, 64> outcome_probabilities(const EffectiveObservables& obs) {
  std::array<double, 64> p{};
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int outcome = 0; outcome < 16; ++outcome) {
        const int sa = (outcome >> 3) & 1 ? -1 : 1;
        const int s0 = (outcome >> 2) & 1 ? -1 : 1;
        const int s1 = (outcome >> 1) & 1 ? -1 : 1;
        const int sc = outcome & 1 ? -1 : 1;
        double sum = 0;
        for (int ua = 0; ua < 2; ++ua)
          for (int b = 0; b < 4; ++b)
            for (int uc = 0; uc < 2; ++uc) {
              int sign = (ua ? sa : 1) * ((b & 1) ? s0 : 1) * ((b & 2) ? s1 : 1) * (uc ? sc : 1);
              sum += sign * correlator(obs, ua ? 1 << x : 0, b, uc ? 1 << z : 0);
            }
        p[static_cast<std::size_t>((x * 2 + z) * 16 + outcome)] = sum / 16;
      }
  return p;
}

} // namespace netloc

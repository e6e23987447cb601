#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "netloc/quantumcorr.hpp"

#include <cmath>

using namespace netloc;

TEST_CASE("state is a normalized product of two singlets") {
  ComplexMatrix rho = swapping_state();
  CHECK(rho.rows() == 16);
  CHECK(std::abs(rho.trace().real() - 1) < 1e-14);
  CHECK((rho - rho.adjoint()).norm() < 1e-14);
  CHECK((rho * rho - rho).norm() < 1e-13);
}

TEST_CASE("operators are Hermitian with spectrum in [-1, 1]") {
  for (double eta : {0.0, 0.3, 1.0}) {
    auto obs = build_operators(eta);
    for (const auto& m : {obs.A[0], obs.A[1], obs.C[0], obs.C[1], obs.B0, obs.B1, obs.B0B1}) {
      CHECK((m - m.adjoint()).norm() < 1e-14);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
      CHECK(es.eigenvalues().minCoeff() >= -1 - 1e-12);
      CHECK(es.eigenvalues().maxCoeff() <= 1 + 1e-12);
    }
    CHECK((obs.B0 * obs.B1 - obs.B0B1).norm() < 1e-14);
  }
  CHECK_THROWS_AS(build_operators(-0.1), std::domain_error);
  CHECK_THROWS_AS(build_operators(1.5), std::domain_error);
}

TEST_CASE("marginals from maximally mixed reduced states") {
  for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto obs = build_operators(eta);
    const double d = 1 - eta;
    CHECK(std::abs(correlator(obs, 1, 0, 0) + d) < 1e-12);
    CHECK(std::abs(correlator(obs, 2, 0, 0) - d) < 1e-12);
    CHECK(std::abs(correlator(obs, 0, 0, 1) - d) < 1e-12);
    CHECK(std::abs(correlator(obs, 0, 1, 0)) < 1e-12);
    CHECK(std::abs(correlator(obs, 0, 2, 0)) < 1e-12);
    // A and C share no source, so their correlator factorizes.
    CHECK(std::abs(correlator(obs, 1, 0, 2) - correlator(obs, 1, 0, 0) * correlator(obs, 0, 0, 2)) < 1e-12);
  }
}

TEST_CASE("non-Hermitian composite is rejected") {
  auto obs = build_operators(1.0);
  CHECK_THROWS_AS(correlator(obs, 3, 0, 0), std::logic_error);
}

TEST_CASE("full table matches the printed polynomial") {
  for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto t = full_table(eta);
    CHECK(t.entries.size() == 36);
    CHECK(t.max_error < 1e-12);
    for (const auto& e : t.entries) CHECK(std::abs(e.value - printed_correlator(eta, e.a, e.b, e.c)) < 1e-12);
  }
}

TEST_CASE("outcome probabilities") {
  for (double eta : {0.0, 0.4, 1.0}) {
    auto p = outcome_probabilities(build_operators(eta));
    for (int block = 0; block < 4; ++block) {
      double sum = 0;
      for (int k = 0; k < 16; ++k) {
        double v = p[static_cast<std::size_t>(block * 16 + k)];
        CHECK(v >= -1e-12);
        sum += v;
      }
      CHECK(std::abs(sum - 1) < 1e-12);
    }
  }
  // Bob's Bell-state measurement gives each of its four results with probability 1/4.
  auto p = outcome_probabilities(build_operators(0.7));
  for (int b = 0; b < 4; ++b) {
    double s = 0;
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) s += p[static_cast<std::size_t>(a * 8 + b * 2 + c)];
    CHECK(std::abs(s - 0.25) < 1e-12);
  }
}

TEST_CASE("monomial names") {
  CHECK(monomial_name(0, 0, 0) == "<1>");
  CHECK(monomial_name(1, 3, 2) != monomial_name(2, 3, 1));
}

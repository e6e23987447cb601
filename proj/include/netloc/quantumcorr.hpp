#pragma once

// Entanglement swapping with two singlets and inefficient detectors for
// Alice and Charlie. Tensor order: Alice, Bob's two qubits, Charlie.

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace netloc {

using ComplexMatrix = Eigen::MatrixXcd;

struct EffectiveObservables {
  double eta = 1;
  std::array<ComplexMatrix, 2> A; // 2x2
  std::array<ComplexMatrix, 2> C; // 2x2
  ComplexMatrix B0, B1, B0B1;     // 4x4 on Bob's qubits
};

/// A0 = eta Abar0 - (1-eta), A1 = eta Abar1 + (1-eta), C_z = eta Cbar_z + (1-eta)
/// with Abar_z = Cbar_z = (sigma_z +- sigma_x)/sqrt 2. Bob's B0, B1 are the two
/// bits of his Bell-state measurement. Throws std::domain_error outside [0, 1].
EffectiveObservables build_operators(double eta);

/// |Psi-><Psi-| (x) |Psi-><Psi-| on (Alice, Bob1) and (Bob2, Charlie).
ComplexMatrix swapping_state();

/// <A-part B-part C-part> with masks as in the model table (bit 0: index 0,
/// bit 1: index 1; both bits multiply the two operators). Throws
/// std::logic_error when the composite operator is not Hermitian.
double correlator(const EffectiveObservables& obs, int a_mask, int b_mask, int c_mask);

struct TableEntry {
  int a = 0, b = 0, c = 0; // masks, a and c in {0, 1, 2}
  double value = 0;
  double expected = 0;
};

struct QuantumTable {
  double eta = 0;
  std::vector<TableEntry> entries;
  double max_error = 0;
};

/// The printed correlator polynomial for single-A, single-C monomials.
double printed_correlator(double eta, int a_mask, int b_mask, int c_mask);

/// Every entry with at most one A and one C factor, compared with the printed
/// polynomial; throws std::runtime_error naming the first entry off by more
/// than 1e-12 unless `strict` is false.
QuantumTable full_table(double eta, bool strict = true);

/// P(a, b0, b1, c | x, z) for x, z in {0, 1} and outcomes +-1, laid out as
/// [(x * 2 + z) * 16 + outcome], outcome bits (a, b0, b1, c) with 1 meaning -1.
std::array<double, 64> outcome_probabilities(const EffectiveObservables& obs);

std::string monomial_name(int a_mask, int b_mask, int c_mask);

} // namespace netloc

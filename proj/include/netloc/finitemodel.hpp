#pragma once

// Finite local hidden-variable models: independent discrete sources, local
// stochastic responses, and the exact reduction of a source's support.

#include "netloc/linalg.hpp"
#include "netloc/netcore.hpp"

#include <cstdint>
#include <vector>

namespace netloc {

/// P_i(a | x, lambda_[i]) for one party. The connected-source tuple is
/// ordered by increasing source index and encoded lexicographically.
template <class T>
struct ResponseTable {
  int inputs = 1;
  int outputs = 2;
  std::vector<int> source_cards;
  std::vector<T> probs; // ((x * grid + lambda) * outputs + a)

  std::size_t grid() const;
  const T& operator()(int x, std::size_t lambda, int a) const {
    return probs[(static_cast<std::size_t>(x) * grid() + lambda) * static_cast<std::size_t>(outputs) +
                 static_cast<std::size_t>(a)];
  }
  T& operator()(int x, std::size_t lambda, int a) {
    return probs[(static_cast<std::size_t>(x) * grid() + lambda) * static_cast<std::size_t>(outputs) +
                 static_cast<std::size_t>(a)];
  }

  bool operator==(const ResponseTable&) const = default;
};

template <class T>
class FiniteLocalModel {
public:
  FiniteLocalModel() = default;
  /// Validates distributions, response normalization and table shapes.
  FiniteLocalModel(Network network, std::vector<std::vector<T>> sources, std::vector<ResponseTable<T>> responses);

  const Network& network() const { return network_; }
  const std::vector<std::vector<T>>& sources() const { return sources_; }
  const std::vector<ResponseTable<T>>& responses() const { return responses_; }
  std::vector<int> cards() const;

  /// Code of party i's connected-source tuple within a full source assignment.
  std::size_t local_code(std::size_t party, std::span<const int> source_values) const;

  bool operator==(const FiniteLocalModel&) const = default;

private:
  Network network_;
  std::vector<std::vector<T>> sources_;
  std::vector<ResponseTable<T>> responses_;
};

using ExactModel = FiniteLocalModel<Rational>;
using FloatModel = FiniteLocalModel<double>;

/// Default cap on source-grid points visited per input tuple.
inline constexpr std::uint64_t kDefaultGridCap = 100'000'000;

template <class T>
BasicBehavior<T> evaluate(const FiniteLocalModel<T>& model, std::uint64_t grid_cap = kDefaultGridCap);

/// Copy of `model` with source `j` replaced by a point mass at `value`.
template <class T>
FiniteLocalModel<T> pin_source(const FiniteLocalModel<T>& model, std::size_t source, int value);

template <class T>
struct ConditionalMember {
  int value;
  BasicBehavior<T> behavior;
  T weight;
};

template <class T>
struct ConditionalBehaviorFamily {
  std::size_t source;
  std::vector<ConditionalMember<T>> members;
};

template <class T>
ConditionalBehaviorFamily<T> conditional_family(const FiniteLocalModel<T>& model, std::size_t source,
                                                std::uint64_t grid_cap = kDefaultGridCap);

/// Carathéodory reduction of a finite convex combination: returns weights over
/// the same points, supported on affinely independent points, with the same
/// mean. Each round takes the dependency attached to the lowest free column
/// and slides along it until the smallest-ratio weight (lowest index on ties)
/// reaches zero.
std::vector<Rational> caratheodory_reduce(const std::vector<RationalVector>& points,
                                          const std::vector<Rational>& weights);

/// Shrinks source `j` to at most affdim{P_mu} + 1 values without changing the
/// behavior. Duplicate conditional behaviors are merged first.
ExactModel compress_source(const ExactModel& model, std::size_t source,
                           std::uint64_t grid_cap = kDefaultGridCap);
/// Compression is exact only; always throws std::domain_error.
FloatModel compress_source(const FloatModel& model, std::size_t source,
                           std::uint64_t grid_cap = kDefaultGridCap);

/// Deterministic triangle model a = [beta >= gamma], b = [gamma >= alpha],
/// c = [alpha >= beta] on representative values with the given weights.
template <class T>
FiniteLocalModel<T> threshold_triangle_model(const std::vector<T>& alpha_values, const std::vector<T>& beta_values,
                                             const std::vector<T>& gamma_values, const std::vector<T>& alpha_weights,
                                             const std::vector<T>& beta_weights,
                                             const std::vector<T>& gamma_weights);

/// Bit-valued model for P_neq: P_alpha(0) = P_beta(0) = 1/3, P_gamma(0) = 1/4,
/// a = beta*gamma, b = 1 xor gamma*alpha, c = alpha when alpha != beta and a
/// fair coin otherwise.
ExactModel pneq_bit_model();

/// Threshold model for P_neq with cardinalities (3, 2, 6); irrational weights.
FloatModel pneq_threshold_model();

/// P_neq = (0,1,1,1,1,1,1,0)/6 on the triangle.
ExactBehavior pneq_behavior();
/// P_eq = (1/2,0,...,0,1/2) on the triangle.
ExactBehavior peq_behavior();

} // namespace netloc

#pragma once

// Scenario definitions: networks of latent sources feeding parties, behavior
// vectors over them, and the cardinality-bound arithmetic.

#include "netloc/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netloc {

struct Party {
  int inputs = 1;
  int outputs = 2;
  bool operator==(const Party&) const = default;
};

/// Parties, sources and the party-by-source incidence matrix.
///
/// Every party reads at least one source and every source feeds at least one
/// party. Networks whose parties fall into several components are accepted;
/// `is_connected()` reports them.
class Network {
public:
  Network() = default;
  Network(std::vector<Party> parties, std::vector<std::vector<int>> incidence);

  /// Triangle: three binary no-input parties, A <- (beta, gamma),
  /// B <- (gamma, alpha), C <- (alpha, beta); sources indexed alpha, beta, gamma.
  static Network triangle(int outputs = 2);
  /// Bilocal chain A - S1 - B - S2 - C with the given alphabets.
  static Network bilocal(std::vector<Party> parties);
  /// Single source shared by every party.
  static Network bell(std::vector<Party> parties);

  std::size_t party_count() const { return parties_.size(); }
  std::size_t source_count() const { return incidence_.empty() ? 0 : incidence_.front().size(); }
  const std::vector<Party>& parties() const { return parties_; }
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }
  bool connected(std::size_t party, std::size_t source) const { return incidence_[party][source] != 0; }

  /// Sources read by `party`, increasing index.
  std::vector<std::size_t> sources_of(std::size_t party) const;
  /// Parties reading `source`, increasing index.
  std::vector<std::size_t> parties_of(std::size_t source) const;

  std::size_t input_tuples() const;
  std::size_t output_tuples() const;
  /// d = prod X_i * prod A_i.
  std::size_t dimension() const { return input_tuples() * output_tuples(); }

  /// True when the party/source bipartite graph has a single component.
  bool is_connected() const;

  bool operator==(const Network&) const = default;

private:
  std::vector<Party> parties_;
  std::vector<std::vector<int>> incidence_;
};

/// Parties reading a designated source (aSide) and the rest (bSide).
struct PartySplit {
  std::vector<std::size_t> aSide;
  std::vector<std::size_t> bSide;
};

PartySplit party_split(const Network& network, std::size_t source);

// ---------------------------------------------------------------------------
// Indexing. Inputs are major, outputs minor, party 1 outermost in both.

std::size_t behavior_index(const Network& network, std::span<const int> inputs,
                           std::span<const int> outputs);

struct IndexTuple {
  std::vector<int> inputs;
  std::vector<int> outputs;
  bool operator==(const IndexTuple&) const = default;
};

IndexTuple behavior_unindex(const Network& network, std::size_t index);

/// Mixed-radix helpers shared by the modules that walk tuples.
std::size_t encode_tuple(std::span<const int> digits, std::span<const int> radices);
void decode_tuple(std::size_t code, std::span<const int> radices, std::span<int> digits);
/// Advances `digits` lexicographically (last digit fastest); false on wrap.
bool next_tuple(std::span<int> digits, std::span<const int> radices);

// ---------------------------------------------------------------------------

enum class Flavor { Exact, Float };

template <class T> inline constexpr Flavor flavor_of = Flavor::Exact;
template <> inline constexpr Flavor flavor_of<double> = Flavor::Float;

/// P(a|x) over a network, flattened per `behavior_index`.
template <class T>
class BasicBehavior {
public:
  BasicBehavior() = default;
  /// Validates nonnegativity and per-input normalization.
  BasicBehavior(Network network, std::vector<T> values);

  /// Skips validation; for intermediate sums that are normalized by construction.
  static BasicBehavior unchecked(Network network, std::vector<T> values);

  const Network& network() const { return network_; }
  const std::vector<T>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }
  const T& at(std::span<const int> inputs, std::span<const int> outputs) const {
    return values_[behavior_index(network_, inputs, outputs)];
  }

  bool operator==(const BasicBehavior&) const = default;

private:
  Network network_;
  std::vector<T> values_;
};

using ExactBehavior = BasicBehavior<Rational>;
using FloatBehavior = BasicBehavior<double>;

FloatBehavior to_float(const ExactBehavior& behavior);

struct NonsignalingReport {
  bool nonsignaling = true;
  std::vector<std::string> violations;
};

/// For every party i, the marginal of the other parties must not depend on x_i.
template <class T>
NonsignalingReport is_nonsignaling(const BasicBehavior<T>& behavior);

// ---------------------------------------------------------------------------
// Cardinality arithmetic

/// prod_i [X_i (A_i - 1) + 1] - 1; zero for an empty party list.
std::int64_t affine_dimension(std::span<const int> inputs, std::span<const int> outputs);
std::int64_t affine_dimension(std::span<const Party> parties);
std::int64_t affine_dimension(const Network& network);

/// d + 1.
std::int64_t cardinality_bound_basic(const Network& network);

struct RefinedBound {
  std::int64_t value = 0;
  /// Non-empty when the bound degenerates (no party outside the source).
  std::string note;
};

/// affdim(all parties) - affdim(parties not reading `source`).
RefinedBound cardinality_bound_refined(const Network& network, std::size_t source);

struct RelaxationSize {
  std::int64_t degrees_of_freedom = 0;
  std::int64_t matrix_side = 0;
};

/// D = 3(r^2 + r - 1) and the degree-2 moment matrix side D(D+1)/2.
RelaxationSize relaxation_size(std::int64_t rank);

} // namespace netloc

#pragma once

// Local polytope of single-source Bell scenarios: deterministic strategies,
// exact LP membership with certificates, and facet enumeration.

#include "netloc/linalg.hpp"
#include "netloc/netcore.hpp"

#include <variant>
#include <vector>

namespace netloc {

/// One 0/1 behavior column per joint deterministic strategy. A strategy is a
/// response function per party, encoded as the digits a(x=0) ... a(x=X-1);
/// strategies are ordered lexicographically with party 1 outermost.
struct StrategyMatrix {
  Network network;
  std::vector<std::vector<std::vector<int>>> strategies; // [lambda][party][input] -> output
  std::vector<RationalVector> columns;

  std::size_t size() const { return columns.size(); }
};

StrategyMatrix enumerate_strategies(const Network& network);

/// Collins–Gisin coordinates: for every nonempty party subset S, the marginals
/// P(a_S | x_S) with each a_i ranging over all but the last output. The
/// dimension equals affine_dimension(network).
class CollinsGisinChart {
public:
  explicit CollinsGisinChart(Network network);

  struct Coordinate {
    std::vector<int> choice; // per party: -1 when absent, else the (x, a) slot
    std::vector<int> inputs;
    std::vector<int> outputs;
  };

  std::size_t dimension() const { return coords_.size(); }
  const std::vector<Coordinate>& coordinates() const { return coords_; }
  const Network& network() const { return network_; }

  RationalVector project(const RationalVector& behavior) const;
  /// Full-coordinate xi with xi^T P = offset + coeffs^T project(P) for every
  /// nonsignaling normalized P.
  RationalVector lift(const Rational& offset, const RationalVector& coeffs) const;

private:
  Network network_;
  std::vector<Coordinate> coords_;
};

struct Decomposition {
  RationalVector weights; // one per strategy column
};

struct LocalityCertificate {
  RationalVector xi;
  Rational value;
  std::vector<std::size_t> tight_strategies;
};

using MembershipResult = std::variant<Decomposition, LocalityCertificate>;

inline bool is_local(const MembershipResult& r) { return std::holds_alternative<Decomposition>(r); }

/// Exact simplex on P = D q, q >= 0. Certificates of nonsignaling behaviors
/// come from the dual program normalized by xi^T (centroid of strategies) = 1
/// in the Collins–Gisin chart, which returns a facet; signaling behaviors get
/// the phase-one Farkas ray. Certificates are shifted so the minimum over
/// strategies is 0, scaled to primitive integers and re-verified.
MembershipResult membership_lp(const ExactBehavior& behavior);

/// Checks xi^T d >= 0 on every column and xi^T P < 0.
bool verify_certificate(const StrategyMatrix& strategies, const LocalityCertificate& cert,
                        const ExactBehavior& behavior);

struct Facet {
  Rational offset;             // offset + coeffs^T y >= 0 in the chart
  RationalVector coeffs;
  RationalVector xi;           // same inequality as xi^T P >= 0
  std::vector<std::size_t> tight_strategies;
};

inline constexpr std::size_t kFacetStrategyCap = 64;

/// Complete irredundant facet list of the local polytope, via double
/// description on the homogenized strategy vertices in the chart. Facets are
/// primitive integer vectors (offset, coeffs), sorted lexicographically.
std::vector<Facet> facet_enumeration(const Network& network, std::size_t strategy_cap = kFacetStrategyCap);

/// Extreme rays of {z : r^T z >= 0 for all rows r}, assuming the rows span.
/// Rays are primitive integer vectors sorted lexicographically.
std::vector<RationalVector> extreme_rays(const std::vector<RationalVector>& rows);

} // namespace netloc

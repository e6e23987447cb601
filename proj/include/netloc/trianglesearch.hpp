#pragma once

// Support-pattern search for finite triangle models and the possibilistic
// feasibility checker.
//
// Sources are alpha, beta, gamma (indices 0, 1, 2); party p reads every
// source except p. A party's cells are the joint values of its two sources,
// ordered by increasing source index.

#include "netloc/finitemodel.hpp"
#include "netloc/multipoly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace netloc {

/// ZERO: the party always outputs 0 in that cell. ONE: always 1.
/// INTERIOR: both outputs occur.
enum class Mark : std::uint8_t { Zero = 0, One = 1, Interior = 2 };

using Cards = std::array<int, 3>;

/// Bit (4a + 2b + c) set when outcome (a, b, c) is possible.
using OutcomeSet = std::uint8_t;

OutcomeSet support_of(const ExactBehavior& behavior);
/// Parses "001,010" style lists.
OutcomeSet parse_outcome_set(const std::string& text);
std::string format_outcome_set(OutcomeSet set);

struct SupportPattern {
  Cards cards{2, 2, 2};
  std::array<std::vector<Mark>, 3> marks;

  static SupportPattern uniform(const Cards& cards, Mark mark);
  /// Base-3 digits, party A's cells first, most significant digit first.
  static SupportPattern from_code(const Cards& cards, std::uint64_t code);
  std::uint64_t code() const;

  std::size_t cells(std::size_t party) const { return marks[party].size(); }
  /// Cell of party p for a full source assignment.
  std::size_t cell_of(std::size_t party, const Cards& source_values) const;
  OutcomeSet possible_outcomes() const;
  std::string to_string() const;

  bool operator==(const SupportPattern&) const = default;
};

/// Number of cells per party for the given cards.
std::array<std::size_t, 3> cells_per_party(const Cards& cards);

struct TriangleSymmetry {
  std::array<int, 3> perm{0, 1, 2};       // party p -> perm[p], source j -> perm[j]
  std::array<bool, 3> source_flip{};      // v -> card - 1 - v before relabeling
  std::array<bool, 3> output_flip{};      // applied to party p before relabeling

  SupportPattern apply(const SupportPattern& pattern) const;
  OutcomeSet apply(OutcomeSet set) const;

  /// Elements compatible with the cards (permutations must preserve them).
  static std::vector<TriangleSymmetry> group(const Cards& cards);
  static std::vector<TriangleSymmetry> stabilizer(const Cards& cards, OutcomeSet target);
};

/// Lexicographically smallest image under `group`.
SupportPattern canonical(const SupportPattern& pattern, const std::vector<TriangleSymmetry>& group);

struct PruneReport {
  std::uint64_t total = 0;           // patterns visited
  std::uint64_t support_matches = 0; // patterns whose possible set equals the target support
  std::size_t stabilizer_order = 0;
  std::vector<SupportPattern> survivors; // canonical, sorted by code
};

/// Visits all 3^12 patterns at cards (2,2,2), keeps those whose possible
/// outcome set equals the target's support and returns canonical
/// representatives under the target stabilizer. Deterministic for any
/// thread count.
PruneReport enumerate_and_prune(const ExactBehavior& target, unsigned threads = 1);

enum class PossibilisticMode { Exhaustive, Pruned };

struct Infeasible {};
using PossibilisticResult = std::variant<SupportPattern, Infeasible>;

/// Default cap on exhaustive patterns (3^12, i.e. cards (2,2,2)).
inline constexpr std::uint64_t kPossibilisticCap = 531'441;

/// Whether some mark assignment on the card grid has possible-outcome set
/// exactly `support`. Full source supports are assumed: a source value of
/// probability zero can be deleted, lowering the card. Exhaustive mode
/// returns the witness of smallest code and throws ResourceError past `cap`.
PossibilisticResult possibilistic_feasible(OutcomeSet support, const Cards& cards,
                                           PossibilisticMode mode = PossibilisticMode::Exhaustive,
                                           std::uint64_t cap = kPossibilisticCap);

/// The polynomial system of a pattern: unknowns are P(source = 0) for every
/// binary source, then P(output 0 | cell) for every INTERIOR cell in party
/// order. equations[k] is the probability of outcome k.
struct FeasibilityProblem {
  SupportPattern pattern;
  std::vector<std::string> unknowns;
  std::vector<MultiPoly> equations;

  explicit FeasibilityProblem(SupportPattern pattern);
  std::size_t unknown_count() const { return unknowns.size(); }
  /// Exact model for a given assignment of the unknowns.
  ExactModel model(const std::vector<Rational>& values) const;
  std::vector<double> evaluate(const std::vector<double>& values) const;

  std::vector<int> source_unknown; // per source: unknown index or -1
  std::vector<std::array<int, 2>> cell_unknown; // unknown -> (party, cell); source entries hold -1
};

struct NumericOptions {
  std::size_t starts = 1000;
  std::size_t sweeps = 200;
  double accept_residual = 1e-10;
  std::int64_t max_denominator = 10'000;
  std::uint64_t seed = 20190901;
};

struct NoSolutionFound {
  std::size_t starts_tried = 0;
  double best_residual = 0;
};

using NumericResult = std::variant<ExactModel, NoSolutionFound>;

/// Multistart projected coordinate descent on the squared residual, followed
/// by a damped Gauss-Newton polish. Candidates are rationalized and accepted
/// only if the exact evaluation reproduces `target` with every free weight
/// strictly inside (0, 1).
NumericResult numeric_feasibility(const FeasibilityProblem& problem, const ExactBehavior& target,
                                  const NumericOptions& options = {});

/// Pattern of the bit model a = beta*gamma, b = 1 xor gamma*alpha, c = alpha
/// or a coin.
SupportPattern pneq_bit_pattern();

} // namespace netloc

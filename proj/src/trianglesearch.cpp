#include "netloc/trianglesearch.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace netloc {

namespace {

constexpr const char* kSourceNames[3] = {"alpha", "beta", "gamma"};
constexpr const char* kPartyNames[3] = {"A", "B", "C"};

// The two sources read by party p, in increasing index order.
std::array<int, 2> sources_of_party(std::size_t p) {
  switch (p) {
  case 0: return {1, 2};
  case 1: return {0, 2};
  default: return {0, 1};
  }
}

// Bit 0: output 0 allowed, bit 1: output 1 allowed.
int allowed_outputs(Mark m) {
  switch (m) {
  case Mark::Zero: return 1;
  case Mark::One: return 2;
  default: return 3;
  }
}

Mark flip_mark(Mark m) {
  if (m == Mark::Zero) return Mark::One;
  if (m == Mark::One) return Mark::Zero;
  return m;
}

std::uint64_t pow3(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / 3) return std::numeric_limits<std::uint64_t>::max();
    r *= 3;
  }
  return r;
}

bool outcome_in(OutcomeSet set, int a, int b, int c) { return (set >> (4 * a + 2 * b + c)) & 1U; }

void check_cards(const Cards& cards) {
  for (int c : cards)
    if (c < 1) throw std::domain_error("source cardinalities must be positive");
}

bool is_binary_triangle(const Network& n) {
  if (n.party_count() != 3 || n.source_count() != 3) return false;
  if (n.incidence() != Network::triangle().incidence()) return false;
  for (const auto& p : n.parties())
    if (p.inputs != 1 || p.outputs != 2) return false;
  return true;
}

} // namespace

OutcomeSet support_of(const ExactBehavior& behavior) {
  if (!is_binary_triangle(behavior.network()))
    throw std::domain_error("support patterns need the binary triangle network without inputs");
  OutcomeSet s = 0;
  for (std::size_t k = 0; k < 8; ++k)
    if (sgn(behavior[k]) != 0) s = static_cast<OutcomeSet>(s | (1U << k));
  return s;
}

OutcomeSet parse_outcome_set(const std::string& text) {
  OutcomeSet s = 0;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.size() != 3 || item.find_first_not_of("01") != std::string::npos)
      throw std::domain_error("outcome '" + item + "' is not three binary digits");
    int k = (item[0] - '0') * 4 + (item[1] - '0') * 2 + (item[2] - '0');
    s = static_cast<OutcomeSet>(s | (1U << k));
  }
  return s;
}

std::string format_outcome_set(OutcomeSet set) {
  std::string out;
  for (int k = 0; k < 8; ++k) {
    if (!((set >> k) & 1U)) continue;
    if (!out.empty()) out += ",";
    out += std::to_string((k >> 2) & 1) + std::to_string((k >> 1) & 1) + std::to_string(k & 1);
  }
  return out;
}

std::array<std::size_t, 3> cells_per_party(const Cards& cards) {
  std::array<std::size_t, 3> out{};
  for (std::size_t p = 0; p < 3; ++p) {
    auto s = sources_of_party(p);
    out[p] = static_cast<std::size_t>(cards[static_cast<std::size_t>(s[0])] * cards[static_cast<std::size_t>(s[1])]);
  }
  return out;
}

SupportPattern SupportPattern::uniform(const Cards& cards, Mark mark) {
  check_cards(cards);
  SupportPattern p;
  p.cards = cards;
  auto n = cells_per_party(cards);
  for (std::size_t q = 0; q < 3; ++q) p.marks[q].assign(n[q], mark);
  return p;
}

SupportPattern SupportPattern::from_code(const Cards& cards, std::uint64_t code) {
  SupportPattern p = uniform(cards, Mark::Zero);
  for (std::size_t q = 3; q-- > 0;)
    for (std::size_t k = p.marks[q].size(); k-- > 0;) {
      p.marks[q][k] = static_cast<Mark>(code % 3);
      code /= 3;
    }
  if (code != 0) throw std::domain_error("pattern code out of range");
  return p;
}

std::uint64_t SupportPattern::code() const {
  std::uint64_t c = 0;
  for (const auto& party : marks)
    for (Mark m : party) c = c * 3 + static_cast<std::uint64_t>(m);
  return c;
}

std::size_t SupportPattern::cell_of(std::size_t party, const Cards& v) const {
  auto s = sources_of_party(party);
  return static_cast<std::size_t>(v[static_cast<std::size_t>(s[0])] * cards[static_cast<std::size_t>(s[1])] +
                                  v[static_cast<std::size_t>(s[1])]);
}

OutcomeSet SupportPattern::possible_outcomes() const {
  unsigned set = 0;
  Cards v{};
  for (v[0] = 0; v[0] < cards[0]; ++v[0])
    for (v[1] = 0; v[1] < cards[1]; ++v[1])
      for (v[2] = 0; v[2] < cards[2]; ++v[2]) {
        int oa = allowed_outputs(marks[0][cell_of(0, v)]);
        int ob = allowed_outputs(marks[1][cell_of(1, v)]);
        int oc = allowed_outputs(marks[2][cell_of(2, v)]);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
              if ((oa >> a & 1) && (ob >> b & 1) && (oc >> c & 1)) set |= 1U << (4 * a + 2 * b + c);
      }
  return static_cast<OutcomeSet>(set);
}

std::string SupportPattern::to_string() const {
  std::string out;
  for (std::size_t q = 0; q < 3; ++q) {
    if (q) out += " ";
    out += kPartyNames[q];
    out += ":";
    for (Mark m : marks[q]) out += m == Mark::Zero ? '0' : m == Mark::One ? '1' : '*';
  }
  return out;
}

SupportPattern TriangleSymmetry::apply(const SupportPattern& pattern) const {
  Cards image_cards{};
  for (std::size_t j = 0; j < 3; ++j) image_cards[static_cast<std::size_t>(perm[j])] = pattern.cards[j];
  SupportPattern out = SupportPattern::uniform(image_cards, Mark::Zero);
  for (std::size_t p = 0; p < 3; ++p) {
    auto s = sources_of_party(p);
    const auto target = static_cast<std::size_t>(perm[p]);
    const int c1 = pattern.cards[static_cast<std::size_t>(s[1])];
    for (std::size_t cell = 0; cell < pattern.marks[p].size(); ++cell) {
      Cards v{};
      Cards image{};
      v[static_cast<std::size_t>(s[0])] = static_cast<int>(cell) / c1;
      v[static_cast<std::size_t>(s[1])] = static_cast<int>(cell) % c1;
      for (int j : s) {
        const auto uj = static_cast<std::size_t>(j);
        int val = source_flip[uj] ? pattern.cards[uj] - 1 - v[uj] : v[uj];
        image[static_cast<std::size_t>(perm[uj])] = val;
      }
      Mark m = pattern.marks[p][cell];
      out.marks[target][out.cell_of(target, image)] = output_flip[p] ? flip_mark(m) : m;
    }
  }
  return out;
}

OutcomeSet TriangleSymmetry::apply(OutcomeSet set) const {
  unsigned out = 0;
  for (int k = 0; k < 8; ++k) {
    if (!((set >> k) & 1U)) continue;
    std::array<int, 3> a{(k >> 2) & 1, (k >> 1) & 1, k & 1};
    std::array<int, 3> image{};
    for (std::size_t p = 0; p < 3; ++p) image[static_cast<std::size_t>(perm[p])] = a[p] ^ (output_flip[p] ? 1 : 0);
    out |= 1U << (4 * image[0] + 2 * image[1] + image[2]);
  }
  return static_cast<OutcomeSet>(out);
}

std::vector<TriangleSymmetry> TriangleSymmetry::group(const Cards& cards) {
  check_cards(cards);
  std::vector<TriangleSymmetry> out;
  std::array<int, 3> perm{0, 1, 2};
  do {
    bool compatible = true;
    for (std::size_t j = 0; j < 3; ++j) compatible = compatible && cards[static_cast<std::size_t>(perm[j])] == cards[j];
    if (!compatible) continue;
    for (unsigned sf = 0; sf < 8; ++sf) {
      bool redundant = false;
      for (std::size_t j = 0; j < 3; ++j) redundant = redundant || (((sf >> j) & 1U) && cards[j] < 2);
      if (redundant) continue;
      for (unsigned of = 0; of < 8; ++of) {
        TriangleSymmetry g;
        g.perm = perm;
        for (std::size_t j = 0; j < 3; ++j) {
          g.source_flip[j] = (sf >> j) & 1U;
          g.output_flip[j] = (of >> j) & 1U;
        }
        out.push_back(g);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<TriangleSymmetry> TriangleSymmetry::stabilizer(const Cards& cards, OutcomeSet target) {
  std::vector<TriangleSymmetry> out;
  for (const auto& g : group(cards))
    if (g.apply(target) == target) out.push_back(g);
  return out;
}

SupportPattern canonical(const SupportPattern& pattern, const std::vector<TriangleSymmetry>& group) {
  SupportPattern best = pattern;
  std::uint64_t best_code = pattern.code();
  for (const auto& g : group) {
    SupportPattern image = g.apply(pattern);
    if (image.cards != pattern.cards) continue;
    std::uint64_t c = image.code();
    if (c < best_code) {
      best_code = c;
      best = std::move(image);
    }
  }
  return best;
}

PruneReport enumerate_and_prune(const ExactBehavior& target, unsigned threads) {
  const OutcomeSet support = support_of(target);
  const Cards cards{2, 2, 2};
  const auto stab = TriangleSymmetry::stabilizer(cards, support);
  const std::uint64_t total = pow3(12);
  threads = std::max(1U, threads);

  struct Chunk {
    std::uint64_t matches = 0;
    std::vector<std::uint64_t> survivors;
  };
  std::vector<Chunk> chunks(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t lo = total * t / threads;
    const std::uint64_t hi = total * (t + 1) / threads;
    for (std::uint64_t code = lo; code < hi; ++code) {
      auto p = SupportPattern::from_code(cards, code);
      if (p.possible_outcomes() != support) continue;
      ++chunks[t].matches;
      if (canonical(p, stab).code() == code) chunks[t].survivors.push_back(code);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();

  PruneReport report;
  report.total = total;
  report.stabilizer_order = stab.size();
  std::vector<std::uint64_t> codes;
  for (const auto& c : chunks) {
    report.support_matches += c.matches;
    codes.insert(codes.end(), c.survivors.begin(), c.survivors.end());
  }
  std::sort(codes.begin(), codes.end());
  for (auto code : codes) report.survivors.push_back(SupportPattern::from_code(cards, code));
  return report;
}

namespace {

PossibilisticResult pruned_search(OutcomeSet support, const Cards& cards) {
  const int ca = cards[0], cb = cards[1], cg = cards[2];
  const auto n = cells_per_party(cards);
  SupportPattern p = SupportPattern::uniform(cards, Mark::Zero);
  const std::uint64_t a_total = pow3(n[0]);

  for (std::uint64_t acode = 0; acode < a_total; ++acode) {
    std::uint64_t rest = acode;
    for (std::size_t k = n[0]; k-- > 0;) {
      p.marks[0][k] = static_cast<Mark>(rest % 3);
      rest /= 3;
    }
    // Marks of B that can coexist with A whatever C does.
    std::vector<std::vector<Mark>> b_options(n[1]);
    bool dead = false;
    for (int al = 0; al < ca && !dead; ++al)
      for (int ga = 0; ga < cg && !dead; ++ga) {
        auto& opts = b_options[static_cast<std::size_t>(al * cg + ga)];
        for (Mark m : {Mark::Zero, Mark::One, Mark::Interior}) {
          bool ok = true;
          for (int b = 0; b < 2 && ok; ++b) {
            if (!((allowed_outputs(m) >> b) & 1)) continue;
            for (int be = 0; be < cb && ok; ++be) {
              int oa = allowed_outputs(p.marks[0][static_cast<std::size_t>(be * cg + ga)]);
              for (int a = 0; a < 2 && ok; ++a)
                if ((oa >> a) & 1) ok = outcome_in(support, a, b, 0) || outcome_in(support, a, b, 1);
            }
          }
          if (ok) opts.push_back(m);
        }
        dead = opts.empty();
      }
    if (dead) continue;

    std::vector<int> digit(n[1], 0);
    std::vector<int> radix(n[1]);
    for (std::size_t k = 0; k < n[1]; ++k) radix[k] = static_cast<int>(b_options[k].size());
    do {
      for (std::size_t k = 0; k < n[1]; ++k) p.marks[1][k] = b_options[k][static_cast<std::size_t>(digit[k])];
      // Largest C compatible with the support; any smaller C reaches a subset.
      bool ok = true;
      for (int al = 0; al < ca && ok; ++al)
        for (int be = 0; be < cb && ok; ++be) {
          int oc = 3;
          for (int ga = 0; ga < cg; ++ga) {
            int oa = allowed_outputs(p.marks[0][static_cast<std::size_t>(be * cg + ga)]);
            int ob = allowed_outputs(p.marks[1][static_cast<std::size_t>(al * cg + ga)]);
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b)
                if (((oa >> a) & 1) && ((ob >> b) & 1))
                  for (int c = 0; c < 2; ++c)
                    if (!outcome_in(support, a, b, c)) oc &= ~(1 << c);
          }
          if (oc == 0) {
            ok = false;
          } else {
            p.marks[2][static_cast<std::size_t>(al * cb + be)] =
                oc == 3 ? Mark::Interior : oc == 1 ? Mark::Zero : Mark::One;
          }
        }
      if (ok && p.possible_outcomes() == support) return p;
    } while (n[1] > 0 && next_tuple(digit, radix));
  }
  return Infeasible{};
}

} // namespace

PossibilisticResult possibilistic_feasible(OutcomeSet support, const Cards& cards, PossibilisticMode mode,
                                           std::uint64_t cap) {
  check_cards(cards);
  if (mode == PossibilisticMode::Pruned) return pruned_search(support, cards);

  const auto n = cells_per_party(cards);
  const std::uint64_t total = pow3(n[0] + n[1] + n[2]);
  if (total > cap)
    throw ResourceError("exhaustive possibilistic search needs " + std::to_string(n[0] + n[1] + n[2]) +
                        " marks, above the cap of " + std::to_string(cap) + " patterns; use the pruned mode");
  for (std::uint64_t code = 0; code < total; ++code) {
    auto p = SupportPattern::from_code(cards, code);
    if (p.possible_outcomes() == support) return p;
  }
  return Infeasible{};
}

FeasibilityProblem::FeasibilityProblem(SupportPattern pat) : pattern(std::move(pat)) {
  for (int c : pattern.cards)
    if (c < 1 || c > 2) throw std::domain_error("polynomial feasibility is implemented for binary sources");
  source_unknown.assign(3, -1);
  for (std::size_t j = 0; j < 3; ++j)
    if (pattern.cards[j] == 2) {
      source_unknown[j] = static_cast<int>(unknowns.size());
      unknowns.push_back(std::string("p_") + kSourceNames[j]);
      cell_unknown.push_back({-1, -1});
    }
  std::array<std::vector<int>, 3> cell_var;
  for (std::size_t p = 0; p < 3; ++p) {
    cell_var[p].assign(pattern.cells(p), -1);
    auto s = sources_of_party(p);
    const int c1 = pattern.cards[static_cast<std::size_t>(s[1])];
    for (std::size_t cell = 0; cell < pattern.cells(p); ++cell) {
      if (pattern.marks[p][cell] != Mark::Interior) continue;
      cell_var[p][cell] = static_cast<int>(unknowns.size());
      unknowns.push_back(std::string("q_") + kPartyNames[p] + std::to_string(static_cast<int>(cell) / c1) +
                         std::to_string(static_cast<int>(cell) % c1));
      cell_unknown.push_back({static_cast<int>(p), static_cast<int>(cell)});
    }
  }

  const std::size_t nv = unknowns.size();
  const auto one = MultiPoly::constant(nv, Rational(1));
  for (int k = 0; k < 8; ++k) {
    std::array<int, 3> a{(k >> 2) & 1, (k >> 1) & 1, k & 1};
    MultiPoly eq(nv);
    Cards v{};
    for (v[0] = 0; v[0] < pattern.cards[0]; ++v[0])
      for (v[1] = 0; v[1] < pattern.cards[1]; ++v[1])
        for (v[2] = 0; v[2] < pattern.cards[2]; ++v[2]) {
          MultiPoly term = one;
          for (std::size_t j = 0; j < 3; ++j) {
            if (source_unknown[j] < 0) continue;
            auto w = MultiPoly::variable(nv, static_cast<std::size_t>(source_unknown[j]));
            term = term * (v[j] == 0 ? w : one - w);
          }
          for (std::size_t p = 0; p < 3 && !term.is_zero(); ++p) {
            std::size_t cell = pattern.cell_of(p, v);
            Mark m = pattern.marks[p][cell];
            if (m == Mark::Interior) {
              auto q = MultiPoly::variable(nv, static_cast<std::size_t>(cell_var[p][cell]));
              term = term * (a[p] == 0 ? q : one - q);
            } else if ((m == Mark::Zero) != (a[p] == 0)) {
              term = MultiPoly(nv);
            }
          }
          eq += term;
        }
    equations.push_back(std::move(eq));
  }
}

ExactModel FeasibilityProblem::model(const std::vector<Rational>& values) const {
  if (values.size() != unknowns.size()) throw std::domain_error("wrong number of unknown values");
  std::vector<std::vector<Rational>> sources(3);
  for (std::size_t j = 0; j < 3; ++j) {
    if (source_unknown[j] < 0) {
      sources[j] = {Rational(1)};
    } else {
      const Rational& w = values[static_cast<std::size_t>(source_unknown[j])];
      sources[j] = {w, 1 - w};
    }
  }
  std::vector<ResponseTable<Rational>> responses;
  std::size_t next = 0;
  while (next < unknowns.size() && cell_unknown[next][0] < 0) ++next;
  for (std::size_t p = 0; p < 3; ++p) {
    auto s = sources_of_party(p);
    ResponseTable<Rational> t;
    t.inputs = 1;
    t.outputs = 2;
    t.source_cards = {pattern.cards[static_cast<std::size_t>(s[0])], pattern.cards[static_cast<std::size_t>(s[1])]};
    t.probs.assign(pattern.cells(p) * 2, Rational(0));
    for (std::size_t cell = 0; cell < pattern.cells(p); ++cell) {
      Rational zero_prob;
      switch (pattern.marks[p][cell]) {
      case Mark::Zero: zero_prob = 1; break;
      case Mark::One: zero_prob = 0; break;
      default: zero_prob = values[next++]; break;
      }
      t(0, cell, 0) = zero_prob;
      t(0, cell, 1) = 1 - zero_prob;
    }
    responses.push_back(std::move(t));
  }
  return ExactModel(Network::triangle(), std::move(sources), std::move(responses));
}

std::vector<double> FeasibilityProblem::evaluate(const std::vector<double>& u) const {
  std::vector<double> out(8, 0.0);
  std::array<std::vector<double>, 3> zero_prob;
  std::size_t next = 0;
  while (next < unknowns.size() && cell_unknown[next][0] < 0) ++next;
  for (std::size_t p = 0; p < 3; ++p) {
    zero_prob[p].resize(pattern.cells(p));
    for (std::size_t cell = 0; cell < pattern.cells(p); ++cell) {
      Mark m = pattern.marks[p][cell];
      zero_prob[p][cell] = m == Mark::Zero ? 1.0 : m == Mark::One ? 0.0 : u[next++];
    }
  }
  Cards v{};
  for (v[0] = 0; v[0] < pattern.cards[0]; ++v[0])
    for (v[1] = 0; v[1] < pattern.cards[1]; ++v[1])
      for (v[2] = 0; v[2] < pattern.cards[2]; ++v[2]) {
        double w = 1;
        for (std::size_t j = 0; j < 3; ++j)
          if (source_unknown[j] >= 0) {
            double x = u[static_cast<std::size_t>(source_unknown[j])];
            w *= v[j] == 0 ? x : 1 - x;
          }
        const double za = zero_prob[0][pattern.cell_of(0, v)];
        const double zb = zero_prob[1][pattern.cell_of(1, v)];
        const double zc = zero_prob[2][pattern.cell_of(2, v)];
        for (int k = 0; k < 8; ++k) {
          double pa = (k >> 2) & 1 ? 1 - za : za;
          double pb = (k >> 1) & 1 ? 1 - zb : zb;
          double pc = k & 1 ? 1 - zc : zc;
          out[static_cast<std::size_t>(k)] += w * pa * pb * pc;
        }
      }
  return out;
}

namespace {

double residual(const std::vector<double>& f, const std::vector<double>& t) {
  double r = 0;
  for (std::size_t k = 0; k < f.size(); ++k) r += (f[k] - t[k]) * (f[k] - t[k]);
  return r;
}

// Every unknown enters multi-affinely, so f is linear along each coordinate
// and the partial derivative is f(u_i = 1) - f(u_i = 0).
std::vector<double> coordinate_slope(const FeasibilityProblem& prob, std::vector<double>& u, std::size_t i,
                                     std::vector<double>& base) {
  const double keep = u[i];
  u[i] = 0;
  base = prob.evaluate(u);
  u[i] = 1;
  auto top = prob.evaluate(u);
  u[i] = keep;
  for (std::size_t k = 0; k < top.size(); ++k) top[k] -= base[k];
  return top;
}

} // namespace

NumericResult numeric_feasibility(const FeasibilityProblem& problem, const ExactBehavior& target,
                                  const NumericOptions& options) {
  const OutcomeSet support = support_of(target);
  NoSolutionFound none{0, std::numeric_limits<double>::infinity()};
  // A pattern with the wrong possible set cannot match the zeros of the target.
  if (problem.pattern.possible_outcomes() != support) return none;

  std::vector<double> t(8);
  for (std::size_t k = 0; k < 8; ++k) t[k] = to_double(target[k]);
  const std::size_t n = problem.unknown_count();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> start(0.02, 0.98);

  for (std::size_t s = 0; s < options.starts; ++s) {
    none.starts_tried = s + 1;
    std::vector<double> u(n);
    for (auto& x : u) x = start(rng);
    std::vector<double> base;
    double r = residual(problem.evaluate(u), t);

    for (std::size_t sweep = 0; sweep < options.sweeps && r > options.accept_residual * 1e-3; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) {
        auto d = coordinate_slope(problem, u, i, base);
        double num = 0, den = 0;
        for (std::size_t k = 0; k < 8; ++k) {
          num += (base[k] - t[k]) * d[k];
          den += d[k] * d[k];
        }
        if (den > 0) u[i] = std::clamp(-num / den, 0.0, 1.0);
      }
      r = residual(problem.evaluate(u), t);
    }

    double mu = 1e-6;
    for (int iter = 0; iter < 40 && r > options.accept_residual * 1e-3 && n > 0; ++iter) {
      Eigen::MatrixXd jac(8, static_cast<Eigen::Index>(n));
      auto f = problem.evaluate(u);
      for (std::size_t i = 0; i < n; ++i) {
        auto d = coordinate_slope(problem, u, i, base);
        for (std::size_t k = 0; k < 8; ++k) jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = d[k];
      }
      Eigen::VectorXd res(8);
      for (std::size_t k = 0; k < 8; ++k) res(static_cast<Eigen::Index>(k)) = f[k] - t[k];
      Eigen::MatrixXd normal = jac.transpose() * jac;
      normal.diagonal().array() += mu;
      Eigen::VectorXd step = normal.ldlt().solve(-jac.transpose() * res);
      std::vector<double> trial = u;
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::clamp(u[i] + step(static_cast<Eigen::Index>(i)), 0.0, 1.0);
      double rt = residual(problem.evaluate(trial), t);
      if (rt < r) {
        u = std::move(trial);
        r = rt;
        mu = std::max(mu * 0.1, 1e-12);
      } else {
        mu *= 10;
      }
    }
    none.best_residual = std::min(none.best_residual, r);
    if (r >= options.accept_residual) continue;

    std::vector<Rational> exact(n);
    bool interior = true;
    for (std::size_t i = 0; i < n; ++i) {
      exact[i] = rationalize(u[i], options.max_denominator);
      interior = interior && sgn(exact[i]) > 0 && exact[i] < 1;
    }
    if (!interior) continue;
    ExactModel model = problem.model(exact);
    if (evaluate(model).values() == target.values()) return model;
  }
  return none;
}

SupportPattern pneq_bit_pattern() {
  SupportPattern p = SupportPattern::uniform({2, 2, 2}, Mark::Zero);
  p.marks[0] = {Mark::Zero, Mark::Zero, Mark::Zero, Mark::One};
  p.marks[1] = {Mark::One, Mark::One, Mark::One, Mark::Zero};
  p.marks[2] = {Mark::Interior, Mark::Zero, Mark::One, Mark::Interior};
  return p;
}

} // namespace netloc

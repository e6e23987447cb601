#pragma once

// Random generators and independent oracles shared by the test binaries.
// The oracles avoid the library's own formulas: they work from definitions.

#include "netloc/bellpoly.hpp"
#include "netloc/finitemodel.hpp"
#include "netloc/linalg.hpp"

#include <random>
#include <set>
#include <vector>

namespace testsupport {

using namespace netloc;
using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random probability vector with small denominators; zeros allowed when `allow_zero`.
inline std::vector<Rational> random_distribution(Rng& rng, std::size_t n, bool allow_zero = true) {
  std::vector<long> raw(n);
  long total = 0;
  for (auto& r : raw) {
    r = uniform_int(rng, allow_zero ? 0 : 1, 9);
    total += r;
  }
  if (total == 0) {
    raw[0] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (long r : raw) out.emplace_back(r, total);
  for (auto& q : out) q.canonicalize();
  return out;
}

inline ExactModel random_model(Rng& rng, const Network& net, const std::vector<int>& cards,
                               double deterministic_bias = 0.3) {
  std::vector<std::vector<Rational>> sources;
  for (int c : cards) sources.push_back(random_distribution(rng, static_cast<std::size_t>(c), false));
  std::vector<ResponseTable<Rational>> tables;
  std::bernoulli_distribution det(deterministic_bias);
  for (std::size_t i = 0; i < net.party_count(); ++i) {
    ResponseTable<Rational> t;
    t.inputs = net.parties()[i].inputs;
    t.outputs = net.parties()[i].outputs;
    for (auto s : net.sources_of(i)) t.source_cards.push_back(cards[s]);
    for (int x = 0; x < t.inputs; ++x)
      for (std::size_t l = 0; l < t.grid(); ++l) {
        std::vector<Rational> row;
        if (det(rng)) {
          row.assign(static_cast<std::size_t>(t.outputs), Rational(0));
          row[static_cast<std::size_t>(uniform_int(rng, 0, t.outputs - 1))] = 1;
        } else {
          row = random_distribution(rng, static_cast<std::size_t>(t.outputs));
        }
        t.probs.insert(t.probs.end(), row.begin(), row.end());
      }
    tables.push_back(std::move(t));
  }
  return ExactModel(net, std::move(sources), std::move(tables));
}

/// Evaluates a model by summing over every joint source value with explicit
/// loops, recomputing indices from first principles.
inline std::vector<Rational> oracle_evaluate(const ExactModel& m) {
  const Network& net = m.network();
  const std::size_t parties = net.party_count();
  std::vector<int> cards = m.cards();
  std::size_t outputs_total = 1, inputs_total = 1;
  for (const auto& p : net.parties()) {
    outputs_total *= static_cast<std::size_t>(p.outputs);
    inputs_total *= static_cast<std::size_t>(p.inputs);
  }
  std::vector<Rational> out(inputs_total * outputs_total, Rational(0));
  std::vector<int> lam(cards.size(), 0);
  for (;;) {
    Rational w = 1;
    for (std::size_t j = 0; j < cards.size(); ++j) w *= m.sources()[j][static_cast<std::size_t>(lam[j])];
    for (std::size_t xi = 0; xi < inputs_total; ++xi)
      for (std::size_t ai = 0; ai < outputs_total; ++ai) {
        // decode with the last party fastest
        std::vector<int> x(parties), a(parties);
        std::size_t rx = xi, ra = ai;
        for (std::size_t i = parties; i-- > 0;) {
          x[i] = static_cast<int>(rx % static_cast<std::size_t>(net.parties()[i].inputs));
          rx /= static_cast<std::size_t>(net.parties()[i].inputs);
          a[i] = static_cast<int>(ra % static_cast<std::size_t>(net.parties()[i].outputs));
          ra /= static_cast<std::size_t>(net.parties()[i].outputs);
        }
        Rational p = w;
        for (std::size_t i = 0; i < parties && sgn(p) != 0; ++i) {
          std::size_t cell = 0;
          for (auto s : net.sources_of(i)) cell = cell * static_cast<std::size_t>(cards[s]) + static_cast<std::size_t>(lam[s]);
          p *= m.responses()[i](x[i], cell, a[i]);
        }
        out[xi * outputs_total + ai] += p;
      }
    std::size_t j = cards.size();
    while (j > 0) {
      --j;
      if (++lam[j] < cards[j]) break;
      lam[j] = 0;
      if (j == 0) return out;
    }
    if (cards.empty()) return out;
  }
}

/// Affine dimension as the affine rank of every deterministic behavior of the
/// parties taken jointly, minus one.
inline std::int64_t oracle_affine_dimension(const std::vector<Party>& parties) {
  std::vector<std::vector<int>> incidence(parties.size(), std::vector<int>{1});
  Network net(parties, incidence);
  auto s = enumerate_strategies(net);
  return static_cast<std::int64_t>(affine_rank(s.columns)) - 1;
}

/// Facets of conv(points) by brute force: every affinely independent subset
/// of size dim spans a candidate hyperplane, kept when all points lie on one
/// side. Returned as primitive (offset, coeffs) vectors, sorted.
inline std::vector<RationalVector> oracle_facets(const std::vector<RationalVector>& points) {
  const std::size_t dim = points.front().size();
  const std::size_t n = points.size();
  std::set<RationalVector> found;
  std::vector<std::size_t> pick(dim);
  for (std::size_t k = 0; k < dim; ++k) pick[k] = k;
  for (;;) {
    RationalMatrix m;
    for (auto k : pick) {
      RationalVector row{Rational(1)};
      row.insert(row.end(), points[k].begin(), points[k].end());
      m.push_back(row);
    }
    if (rank(m) == dim) {
      auto h = first_null_vector(m);
      if (h) {
        int side = 0;
        bool ok = true;
        for (const auto& p : points) {
          Rational v = (*h)[0];
          for (std::size_t i = 0; i < dim; ++i) v += (*h)[i + 1] * p[i];
          int s = sgn(v);
          if (s == 0) continue;
          if (side == 0) side = s;
          if (s != side) {
            ok = false;
            break;
          }
        }
        if (ok && side != 0) {
          RationalVector z = *h;
          if (side < 0)
            for (auto& v : z) v = -v;
          found.insert(primitive_integer(z));
        }
      }
    }
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == n - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < dim; ++k) pick[k] = pick[k - 1] + 1;
  }
  return {found.begin(), found.end()};
}

} // namespace testsupport

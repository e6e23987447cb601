#include "netloc/bellpoly.hpp"

#include "netloc/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace netloc {

namespace {

void require_single_source(const Network& network) {
  if (network.source_count() != 1)
    throw std::domain_error("Bell polytope tools need a single-source network; use the triangle search for "
                            "multi-source networks");
}

std::vector<int> radices_inputs(const Network& n) {
  std::vector<int> r;
  for (const auto& p : n.parties()) r.push_back(p.inputs);
  return r;
}

std::vector<int> radices_outputs(const Network& n) {
  std::vector<int> r;
  for (const auto& p : n.parties()) r.push_back(p.outputs);
  return r;
}

class Bitset {
public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  bool subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  RationalVector z;
  Bitset zeros;
};

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RationalMatrix invert(RationalMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Rational(0));
    m[i][n + i] = 1;
  }
  auto pivots = row_reduce(m);
  if (pivots.size() != n || pivots.back() != n - 1) throw std::domain_error("matrix is singular");
  RationalMatrix inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

} // namespace

StrategyMatrix enumerate_strategies(const Network& network) {
  require_single_source(network);
  const std::size_t m = network.party_count();
  std::vector<int> per_party;
  for (const auto& p : network.parties()) {
    int k = 1;
    for (int x = 0; x < p.inputs; ++x) k *= p.outputs;
    per_party.push_back(k);
  }
  auto xr = radices_inputs(network);
  auto ar = radices_outputs(network);

  StrategyMatrix out{network, {}, {}};
  std::vector<int> codes(m, 0), x(m), a(m);
  do {
    std::vector<std::vector<int>> strategy(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& p = network.parties()[i];
      strategy[i].assign(static_cast<std::size_t>(p.inputs), 0);
      std::vector<int> radix(static_cast<std::size_t>(p.inputs), p.outputs);
      decode_tuple(static_cast<std::size_t>(codes[i]), radix, strategy[i]);
    }
    RationalVector column(network.dimension(), Rational(0));
    std::fill(x.begin(), x.end(), 0);
    do {
      for (std::size_t i = 0; i < m; ++i) a[i] = strategy[i][static_cast<std::size_t>(x[i])];
      column[behavior_index(network, x, a)] = 1;
    } while (next_tuple(x, xr));
    out.strategies.push_back(std::move(strategy));
    out.columns.push_back(std::move(column));
  } while (next_tuple(codes, per_party));
  return out;
}

CollinsGisinChart::CollinsGisinChart(Network network) : network_(std::move(network)) {
  const std::size_t m = network_.party_count();
  std::vector<int> radix;
  for (const auto& p : network_.parties()) radix.push_back(1 + p.inputs * (p.outputs - 1));
  std::vector<int> choice(m, 0);
  while (next_tuple(choice, radix)) {
    Coordinate c;
    c.choice.assign(m, -1);
    c.inputs.assign(m, 0);
    c.outputs.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (choice[i] == 0) continue;
      const int slot = choice[i] - 1;
      const int reduced = network_.parties()[i].outputs - 1;
      c.choice[i] = slot;
      c.inputs[i] = slot / reduced;
      c.outputs[i] = slot % reduced;
    }
    coords_.push_back(std::move(c));
  }
}

RationalVector CollinsGisinChart::project(const RationalVector& behavior) const {
  if (behavior.size() != network_.dimension()) throw std::domain_error("behavior length mismatch");
  const std::size_t m = network_.party_count();
  auto ar = radices_outputs(network_);
  RationalVector y;
  y.reserve(coords_.size());
  std::vector<int> a(m);
  for (const auto& c : coords_) {
    Rational s = 0;
    std::fill(a.begin(), a.end(), 0);
    do {
      bool match = true;
      for (std::size_t i = 0; i < m && match; ++i) match = c.choice[i] < 0 || a[i] == c.outputs[i];
      if (match) s += behavior[behavior_index(network_, c.inputs, a)];
    } while (next_tuple(a, ar));
    y.push_back(s);
  }
  return y;
}

RationalVector CollinsGisinChart::lift(const Rational& offset, const RationalVector& coeffs) const {
  if (coeffs.size() != coords_.size()) throw std::domain_error("chart coefficient length mismatch");
  const std::size_t m = network_.party_count();
  auto ar = radices_outputs(network_);
  RationalVector xi(network_.dimension(), Rational(0));
  for (std::size_t k = 0; k < network_.output_tuples(); ++k) xi[k] += offset;
  std::vector<int> a(m);
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (sgn(coeffs[k]) == 0) continue;
    const auto& c = coords_[k];
    std::fill(a.begin(), a.end(), 0);
    do {
      bool match = true;
      for (std::size_t i = 0; i < m && match; ++i) match = c.choice[i] < 0 || a[i] == c.outputs[i];
      if (match) xi[behavior_index(network_, c.inputs, a)] += coeffs[k];
    } while (next_tuple(a, ar));
  }
  return xi;
}

bool verify_certificate(const StrategyMatrix& strategies, const LocalityCertificate& cert,
                        const ExactBehavior& behavior) {
  for (const auto& col : strategies.columns)
    if (sgn(dot(cert.xi, col)) < 0) return false;
  return sgn(dot(cert.xi, behavior.values())) < 0 && dot(cert.xi, behavior.values()) == cert.value;
}

namespace {

// Dual program with xi^T (strategy centroid) = 1 in the chart; its optimal
// vertex is a facet of the local polytope.
RationalVector facet_certificate(const StrategyMatrix& s, const ExactBehavior& behavior) {
  CollinsGisinChart chart(s.network);
  const std::size_t dim = chart.dimension();
  const std::size_t count = s.size();
  std::vector<RationalVector> ys;
  RationalVector centroid(dim, Rational(0));
  for (const auto& col : s.columns) {
    ys.push_back(chart.project(col));
    for (std::size_t k = 0; k < dim; ++k) centroid[k] += ys.back()[k];
  }
  for (auto& v : centroid) v /= static_cast<long>(count);
  RationalVector target = chart.project(behavior.values());

  // Columns: a+ (dim), a- (dim), b+, b-, slack (count).
  const std::size_t cols = 2 * dim + 2 + count;
  LinearProgram lp;
  auto row_for = [&](const RationalVector& y) {
    RationalVector r(cols, Rational(0));
    for (std::size_t k = 0; k < dim; ++k) {
      r[k] = y[k];
      r[dim + k] = -y[k];
    }
    r[2 * dim] = 1;
    r[2 * dim + 1] = -1;
    return r;
  };
  for (std::size_t l = 0; l < count; ++l) {
    auto r = row_for(ys[l]);
    r[2 * dim + 2 + l] = -1;
    lp.A.push_back(std::move(r));
    lp.b.emplace_back(0);
  }
  lp.A.push_back(row_for(centroid));
  lp.b.emplace_back(1);
  lp.c = row_for(target);

  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw std::logic_error("facet certificate program did not reach an optimum");
  RationalVector coeffs(dim);
  for (std::size_t k = 0; k < dim; ++k) coeffs[k] = res.x[k] - res.x[dim + k];
  Rational offset = res.x[2 * dim] - res.x[2 * dim + 1];
  return chart.lift(offset, coeffs);
}

LocalityCertificate finish_certificate(const StrategyMatrix& s, RationalVector xi, const ExactBehavior& behavior) {
  Rational lowest = dot(xi, s.columns.front());
  for (const auto& col : s.columns) lowest = std::min(lowest, dot(xi, col));
  // Every strategy puts exactly one unit of mass in the first input block.
  for (std::size_t k = 0; k < s.network.output_tuples(); ++k) xi[k] -= lowest;
  xi = primitive_integer(xi);

  LocalityCertificate cert{xi, dot(xi, behavior.values()), {}};
  for (std::size_t l = 0; l < s.size(); ++l)
    if (sgn(dot(xi, s.columns[l])) == 0) cert.tight_strategies.push_back(l);
  if (!verify_certificate(s, cert, behavior)) throw std::logic_error("locality certificate failed re-verification");
  return cert;
}

} // namespace

MembershipResult membership_lp(const ExactBehavior& behavior) {
  const Network& net = behavior.network();
  auto s = enumerate_strategies(net);
  const std::size_t d = net.dimension();

  LinearProgram lp;
  lp.A.assign(d, RationalVector(s.size()));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t l = 0; l < s.size(); ++l) lp.A[r][l] = s.columns[l][r];
  lp.b = behavior.values();
  auto res = solve_lp(lp);

  if (res.status == LpStatus::Optimal) {
    RationalVector reproduced(d, Rational(0));
    for (std::size_t l = 0; l < s.size(); ++l)
      if (sgn(res.x[l]) != 0)
        for (std::size_t r = 0; r < d; ++r) reproduced[r] += res.x[l] * s.columns[l][r];
    if (reproduced != behavior.values()) throw std::logic_error("decomposition failed re-verification");
    return Decomposition{res.x};
  }

  if (is_nonsignaling(behavior).nonsignaling) return finish_certificate(s, facet_certificate(s, behavior), behavior);

  RationalVector xi(d);
  for (std::size_t r = 0; r < d; ++r) xi[r] = -res.farkas[r];
  return finish_certificate(s, std::move(xi), behavior);
}

std::vector<RationalVector> extreme_rays(const std::vector<RationalVector>& rows) {
  if (rows.empty()) throw std::domain_error("no constraint rows");
  const std::size_t dim = rows.front().size();
  const std::size_t count = rows.size();

  // Greedy independent starting rows.
  std::vector<std::size_t> basis;
  RationalMatrix acc;
  for (std::size_t i = 0; i < count && basis.size() < dim; ++i) {
    acc.push_back(rows[i]);
    if (rank(acc) == acc.size()) {
      basis.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  if (basis.size() < dim) throw std::domain_error("constraint rows do not span the space; cone is not pointed");

  auto inv = invert(acc);
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    Ray r{RationalVector(dim), Bitset(count)};
    for (std::size_t i = 0; i < dim; ++i) r.z[i] = inv[i][k];
    r.z = primitive_integer(r.z);
    for (std::size_t b = 0; b < dim; ++b)
      if (b != k) r.zeros.set(basis[b]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> in_basis(count, false);
  for (auto b : basis) in_basis[b] = true;
  for (std::size_t h = 0; h < count; ++h) {
    if (in_basis[h]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(rows[h], rays[r].z);
      if (sgn(val[r]) > 0) {
        pos.push_back(r);
      } else if (sgn(val[r]) < 0) {
        neg.push_back(r);
      } else {
        rays[r].zeros.set(h);
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sgn(val[r]) >= 0) next.push_back(rays[r]);
    for (auto p : pos)
      for (auto n : neg) {
        Bitset common = rays[p].zeros & rays[n].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != n && common.subset_of(rays[r].zeros)) adjacent = false;
        if (!adjacent) continue;
        Ray fresh{RationalVector(dim), common};
        for (std::size_t i = 0; i < dim; ++i) fresh.z[i] = val[p] * rays[n].z[i] - val[n] * rays[p].z[i];
        fresh.z = primitive_integer(fresh.z);
        fresh.zeros.set(h);
        next.push_back(std::move(fresh));
      }
    rays = std::move(next);
  }

  std::vector<RationalVector> out;
  for (auto& r : rays) out.push_back(std::move(r.z));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<Facet> facet_enumeration(const Network& network, std::size_t strategy_cap) {
  require_single_source(network);
  std::size_t count = 1;
  for (const auto& p : network.parties())
    for (int x = 0; x < p.inputs; ++x) {
      count *= static_cast<std::size_t>(p.outputs);
      if (count > strategy_cap)
        throw ResourceError("facet enumeration is limited to " + std::to_string(strategy_cap) +
                            " deterministic strategies");
    }

  auto s = enumerate_strategies(network);
  CollinsGisinChart chart(network);
  std::vector<RationalVector> rows;
  for (const auto& col : s.columns) {
    RationalVector r{Rational(1)};
    auto y = chart.project(col);
    r.insert(r.end(), y.begin(), y.end());
    rows.push_back(std::move(r));
  }

  std::vector<Facet> facets;
  for (auto& ray : extreme_rays(rows)) {
    Facet f;
    f.offset = ray[0];
    f.coeffs.assign(ray.begin() + 1, ray.end());
    std::vector<RationalVector> tight_points;
    for (std::size_t l = 0; l < rows.size(); ++l)
      if (sgn(dot(rows[l], ray)) == 0) {
        f.tight_strategies.push_back(l);
        tight_points.emplace_back(rows[l].begin() + 1, rows[l].end());
      }
    if (affine_rank(tight_points) != chart.dimension())
      throw std::logic_error("enumerated inequality is not facet-defining");
    f.xi = chart.lift(f.offset, f.coeffs);
    facets.push_back(std::move(f));
  }
  return facets;
}

} // namespace netloc

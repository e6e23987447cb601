#include "netloc/netcore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace netloc {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("integer overflow in dimension arithmetic");
  return out;
}

std::vector<int> input_radices(const Network& n) {
  std::vector<int> r;
  for (const auto& p : n.parties()) r.push_back(p.inputs);
  return r;
}

std::vector<int> output_radices(const Network& n) {
  std::vector<int> r;
  for (const auto& p : n.parties()) r.push_back(p.outputs);
  return r;
}

} // namespace

Network::Network(std::vector<Party> parties, std::vector<std::vector<int>> incidence)
    : parties_(std::move(parties)), incidence_(std::move(incidence)) {
  if (parties_.empty()) throw std::domain_error("network needs at least one party");
  if (incidence_.size() != parties_.size())
    throw std::domain_error("incidence matrix must have one row per party");
  const std::size_t n = incidence_.front().size();
  if (n == 0) throw std::domain_error("network needs at least one source");
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (parties_[i].inputs < 1 || parties_[i].outputs < 1)
      throw std::domain_error("party " + std::to_string(i) + ": alphabet sizes must be positive");
    if (incidence_[i].size() != n) throw std::domain_error("incidence matrix rows differ in length");
    bool any = false;
    for (int v : incidence_[i]) {
      if (v != 0 && v != 1) throw std::domain_error("incidence entries must be 0 or 1");
      any = any || v == 1;
    }
    if (!any) throw std::domain_error("party " + std::to_string(i) + " reads no source");
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (const auto& row : incidence_) any = any || row[j] == 1;
    if (!any) throw std::domain_error("source " + std::to_string(j) + " feeds no party");
  }
}

Network Network::triangle(int outputs) {
  std::vector<Party> parties(3, Party{1, outputs});
  return Network(parties, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

Network Network::bilocal(std::vector<Party> parties) {
  if (parties.size() != 3) throw std::domain_error("bilocal network has three parties");
  return Network(std::move(parties), {{1, 0}, {1, 1}, {0, 1}});
}

Network Network::bell(std::vector<Party> parties) {
  std::vector<std::vector<int>> inc(parties.size(), std::vector<int>{1});
  return Network(std::move(parties), std::move(inc));
}

std::vector<std::size_t> Network::sources_of(std::size_t party) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < source_count(); ++j)
    if (incidence_[party][j]) out.push_back(j);
  return out;
}

std::vector<std::size_t> Network::parties_of(std::size_t source) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < party_count(); ++i)
    if (incidence_[i][source]) out.push_back(i);
  return out;
}

std::size_t Network::input_tuples() const {
  std::size_t k = 1;
  for (const auto& p : parties_) k *= static_cast<std::size_t>(p.inputs);
  return k;
}

std::size_t Network::output_tuples() const {
  std::size_t k = 1;
  for (const auto& p : parties_) k *= static_cast<std::size_t>(p.outputs);
  return k;
}

bool Network::is_connected() const {
  if (parties_.empty()) return true;
  std::vector<bool> seen_party(party_count(), false), seen_source(source_count(), false);
  std::vector<std::size_t> stack{0};
  seen_party[0] = true;
  while (!stack.empty()) {
    std::size_t p = stack.back();
    stack.pop_back();
    for (std::size_t s : sources_of(p)) {
      if (seen_source[s]) continue;
      seen_source[s] = true;
      for (std::size_t q : parties_of(s))
        if (!seen_party[q]) {
          seen_party[q] = true;
          stack.push_back(q);
        }
    }
  }
  return std::find(seen_party.begin(), seen_party.end(), false) == seen_party.end();
}

PartySplit party_split(const Network& network, std::size_t source) {
  if (source >= network.source_count()) throw std::domain_error("source index out of range");
  PartySplit split;
  for (std::size_t i = 0; i < network.party_count(); ++i)
    (network.connected(i, source) ? split.aSide : split.bSide).push_back(i);
  return split;
}

// ---------------------------------------------------------------------------

std::size_t encode_tuple(std::span<const int> digits, std::span<const int> radices) {
  std::size_t code = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) code = code * static_cast<std::size_t>(radices[i]) + digits[i];
  return code;
}

void decode_tuple(std::size_t code, std::span<const int> radices, std::span<int> digits) {
  for (std::size_t i = radices.size(); i-- > 0;) {
    digits[i] = static_cast<int>(code % static_cast<std::size_t>(radices[i]));
    code /= static_cast<std::size_t>(radices[i]);
  }
}

bool next_tuple(std::span<int> digits, std::span<const int> radices) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radices[i]) return true;
    digits[i] = 0;
  }
  return false;
}

std::size_t behavior_index(const Network& network, std::span<const int> inputs,
                           std::span<const int> outputs) {
  const auto& parties = network.parties();
  if (inputs.size() != parties.size() || outputs.size() != parties.size())
    throw std::domain_error("index tuples must have one entry per party");
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (inputs[i] < 0 || inputs[i] >= parties[i].inputs)
      throw std::domain_error("party " + std::to_string(i) + ": input " + std::to_string(inputs[i]) +
                              " outside [0," + std::to_string(parties[i].inputs) + ")");
    if (outputs[i] < 0 || outputs[i] >= parties[i].outputs)
      throw std::domain_error("party " + std::to_string(i) + ": output " + std::to_string(outputs[i]) +
                              " outside [0," + std::to_string(parties[i].outputs) + ")");
  }
  auto xr = input_radices(network);
  auto ar = output_radices(network);
  return encode_tuple(inputs, xr) * network.output_tuples() + encode_tuple(outputs, ar);
}

IndexTuple behavior_unindex(const Network& network, std::size_t index) {
  if (index >= network.dimension()) throw std::domain_error("behavior index out of range");
  auto xr = input_radices(network);
  auto ar = output_radices(network);
  IndexTuple t{std::vector<int>(xr.size()), std::vector<int>(ar.size())};
  decode_tuple(index / network.output_tuples(), xr, t.inputs);
  decode_tuple(index % network.output_tuples(), ar, t.outputs);
  return t;
}

// ---------------------------------------------------------------------------

template <class T>
BasicBehavior<T>::BasicBehavior(Network network, std::vector<T> values)
    : network_(std::move(network)), values_(std::move(values)) {
  if (values_.size() != network_.dimension())
    throw std::domain_error("behavior has " + std::to_string(values_.size()) + " entries, network needs " +
                            std::to_string(network_.dimension()));
  const std::size_t block = network_.output_tuples();
  for (std::size_t x = 0; x < network_.input_tuples(); ++x) {
    T sum = 0;
    for (std::size_t a = 0; a < block; ++a) {
      const T& v = values_[x * block + a];
      if (v < 0 && !approx_equal(v, T(0))) throw std::domain_error("behavior has a negative entry");
      sum += v;
    }
    if (!approx_equal(sum, T(1)))
      throw std::domain_error("behavior block for input tuple " + std::to_string(x) + " does not sum to 1");
  }
}

template <class T>
BasicBehavior<T> BasicBehavior<T>::unchecked(Network network, std::vector<T> values) {
  BasicBehavior b;
  b.network_ = std::move(network);
  b.values_ = std::move(values);
  return b;
}

FloatBehavior to_float(const ExactBehavior& behavior) {
  std::vector<double> v;
  v.reserve(behavior.size());
  for (const auto& q : behavior.values()) v.push_back(q.get_d());
  return FloatBehavior::unchecked(behavior.network(), std::move(v));
}

template <class T>
NonsignalingReport is_nonsignaling(const BasicBehavior<T>& behavior) {
  const Network& net = behavior.network();
  const std::size_t m = net.party_count();
  auto xr = input_radices(net);
  auto ar = output_radices(net);
  NonsignalingReport report;

  // Marginal of everyone but party i, for each setting of x_i; compare against x_i = 0.
  for (std::size_t i = 0; i < m; ++i) {
    if (xr[i] == 1) continue;
    std::vector<int> x(m, 0), a(m, 0);
    do {
      if (x[i] != 0) continue;
      std::fill(a.begin(), a.end(), 0);
      do {
        if (a[i] != 0) continue;
        std::vector<T> marg(static_cast<std::size_t>(xr[i]), T(0));
        for (int xi = 0; xi < xr[i]; ++xi) {
          auto xx = x;
          xx[i] = xi;
          for (int ai = 0; ai < ar[i]; ++ai) {
            auto aa = a;
            aa[i] = ai;
            marg[static_cast<std::size_t>(xi)] += behavior.at(xx, aa);
          }
        }
        for (int xi = 1; xi < xr[i]; ++xi) {
          if (approx_equal(marg[static_cast<std::size_t>(xi)], marg[0])) continue;
          std::ostringstream msg;
          msg << "party " << i << ": marginal of the others changes between x" << i << "=0 and x" << i << "="
              << xi << " at x=(";
          for (std::size_t k = 0; k < m; ++k) msg << (k ? "," : "") << (k == i ? std::string("*") : std::to_string(x[k]));
          msg << ") a=(";
          for (std::size_t k = 0; k < m; ++k) msg << (k ? "," : "") << (k == i ? std::string("*") : std::to_string(a[k]));
          msg << ")";
          report.violations.push_back(msg.str());
        }
      } while (next_tuple(a, ar));
    } while (next_tuple(x, xr));
  }
  report.nonsignaling = report.violations.empty();
  return report;
}

template class BasicBehavior<Rational>;
template class BasicBehavior<double>;
template NonsignalingReport is_nonsignaling(const BasicBehavior<Rational>&);
template NonsignalingReport is_nonsignaling(const BasicBehavior<double>&);

// ---------------------------------------------------------------------------

std::int64_t affine_dimension(std::span<const int> inputs, std::span<const int> outputs) {
  if (inputs.size() != outputs.size()) throw std::domain_error("input and output lists differ in length");
  std::int64_t prod = 1;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i] < 1 || outputs[i] < 1) throw std::domain_error("alphabet sizes must be positive");
    prod = checked_mul(prod, static_cast<std::int64_t>(inputs[i]) * (outputs[i] - 1) + 1);
  }
  return prod - 1;
}

std::int64_t affine_dimension(std::span<const Party> parties) {
  std::vector<int> x, a;
  for (const auto& p : parties) {
    x.push_back(p.inputs);
    a.push_back(p.outputs);
  }
  return affine_dimension(x, a);
}

std::int64_t affine_dimension(const Network& network) { return affine_dimension(network.parties()); }

std::int64_t cardinality_bound_basic(const Network& network) {
  std::int64_t d = 1;
  for (const auto& p : network.parties()) d = checked_mul(checked_mul(d, p.inputs), p.outputs);
  return d + 1;
}

RefinedBound cardinality_bound_refined(const Network& network, std::size_t source) {
  PartySplit split = party_split(network, source);
  std::vector<Party> rest;
  for (std::size_t i : split.bSide) rest.push_back(network.parties()[i]);
  RefinedBound out;
  out.value = affine_dimension(network) - affine_dimension(rest);
  if (split.bSide.empty())
    out.note = "every party reads source " + std::to_string(source) +
               "; no constant marginal to remove, bound is the full affine dimension";
  return out;
}

RelaxationSize relaxation_size(std::int64_t rank) {
  if (rank < 1) throw std::domain_error("rank must be at least 1");
  std::int64_t dof = checked_mul(3, checked_mul(rank, rank) + rank - 1);
  return {dof, checked_mul(dof, dof + 1) / 2};
}

} // namespace netloc

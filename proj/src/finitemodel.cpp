#include "netloc/finitemodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace netloc {

namespace {

template <class T>
void check_distribution(const std::vector<T>& dist, const std::string& what) {
  if (dist.empty()) throw std::domain_error(what + " is empty");
  T sum = 0;
  for (const auto& v : dist) {
    if (v < 0 && !approx_equal(v, T(0))) throw std::domain_error(what + " has a negative entry");
    sum += v;
  }
  if (!approx_equal(sum, T(1))) throw std::domain_error(what + " does not sum to 1");
}

} // namespace

template <class T>
std::size_t ResponseTable<T>::grid() const {
  std::size_t g = 1;
  for (int c : source_cards) g *= static_cast<std::size_t>(c);
  return g;
}

template <class T>
FiniteLocalModel<T>::FiniteLocalModel(Network network, std::vector<std::vector<T>> sources,
                                      std::vector<ResponseTable<T>> responses)
    : network_(std::move(network)), sources_(std::move(sources)), responses_(std::move(responses)) {
  if (sources_.size() != network_.source_count())
    throw std::domain_error("model needs one distribution per source");
  for (std::size_t j = 0; j < sources_.size(); ++j)
    check_distribution(sources_[j], "source " + std::to_string(j) + " distribution");
  if (responses_.size() != network_.party_count())
    throw std::domain_error("model needs one response table per party");
  for (std::size_t i = 0; i < responses_.size(); ++i) {
    const auto& r = responses_[i];
    const auto& p = network_.parties()[i];
    const std::string who = "party " + std::to_string(i) + " response table";
    if (r.inputs != p.inputs || r.outputs != p.outputs)
      throw std::domain_error(who + " alphabet sizes disagree with the network");
    auto conn = network_.sources_of(i);
    if (r.source_cards.size() != conn.size()) throw std::domain_error(who + " has the wrong source arity");
    for (std::size_t k = 0; k < conn.size(); ++k)
      if (r.source_cards[k] != static_cast<int>(sources_[conn[k]].size()))
        throw std::domain_error(who + " shape disagrees with source " + std::to_string(conn[k]) + " cardinality");
    if (r.probs.size() != static_cast<std::size_t>(r.inputs) * r.grid() * static_cast<std::size_t>(r.outputs))
      throw std::domain_error(who + " has the wrong number of entries");
    for (int x = 0; x < r.inputs; ++x)
      for (std::size_t l = 0; l < r.grid(); ++l) {
        T sum = 0;
        for (int a = 0; a < r.outputs; ++a) {
          const T& v = r(x, l, a);
          if (v < 0 && !approx_equal(v, T(0))) throw std::domain_error(who + " has a negative entry");
          sum += v;
        }
        if (!approx_equal(sum, T(1)))
          throw std::domain_error(who + " column (x=" + std::to_string(x) + ", lambda=" + std::to_string(l) +
                                  ") does not sum to 1");
      }
  }
}

template <class T>
std::vector<int> FiniteLocalModel<T>::cards() const {
  std::vector<int> c;
  for (const auto& s : sources_) c.push_back(static_cast<int>(s.size()));
  return c;
}

template <class T>
std::size_t FiniteLocalModel<T>::local_code(std::size_t party, std::span<const int> source_values) const {
  std::size_t code = 0;
  for (std::size_t j = 0; j < sources_.size(); ++j)
    if (network_.connected(party, j)) code = code * sources_[j].size() + static_cast<std::size_t>(source_values[j]);
  return code;
}

template <class T>
BasicBehavior<T> evaluate(const FiniteLocalModel<T>& model, std::uint64_t grid_cap) {
  const Network& net = model.network();
  const auto cards = model.cards();
  std::uint64_t grid = 1;
  for (int c : cards) {
    grid *= static_cast<std::uint64_t>(c);
    if (grid > grid_cap)
      throw ResourceError("source grid exceeds the cap of " + std::to_string(grid_cap) + " terms per input tuple");
  }

  const std::size_t m = net.party_count();
  std::vector<int> xr, ar;
  for (const auto& p : net.parties()) {
    xr.push_back(p.inputs);
    ar.push_back(p.outputs);
  }
  const std::size_t block = net.output_tuples();
  std::vector<T> values(net.dimension(), T(0));
  std::vector<int> lambda(cards.size(), 0), x(m), a(m);
  std::vector<std::size_t> codes(m);
  do {
    T w = 1;
    for (std::size_t j = 0; j < cards.size(); ++j) w *= model.sources()[j][static_cast<std::size_t>(lambda[j])];
    if (is_zero(w)) continue;
    for (std::size_t i = 0; i < m; ++i) codes[i] = model.local_code(i, lambda);

    std::fill(x.begin(), x.end(), 0);
    std::size_t xcode = 0;
    do {
      std::fill(a.begin(), a.end(), 0);
      std::size_t acode = 0;
      do {
        T term = w;
        for (std::size_t i = 0; i < m && !is_zero(term); ++i) term *= model.responses()[i](x[i], codes[i], a[i]);
        if (!is_zero(term)) values[xcode * block + acode] += term;
        ++acode;
      } while (next_tuple(a, ar));
      ++xcode;
    } while (next_tuple(x, xr));
  } while (next_tuple(lambda, cards));

  return BasicBehavior<T>::unchecked(net, std::move(values));
}

template <class T>
FiniteLocalModel<T> pin_source(const FiniteLocalModel<T>& model, std::size_t source, int value) {
  if (source >= model.sources().size()) throw std::domain_error("source index out of range");
  if (value < 0 || value >= static_cast<int>(model.sources()[source].size()))
    throw std::domain_error("source value out of range");
  auto sources = model.sources();
  std::fill(sources[source].begin(), sources[source].end(), T(0));
  sources[source][static_cast<std::size_t>(value)] = 1;
  return FiniteLocalModel<T>(model.network(), std::move(sources), model.responses());
}

template <class T>
ConditionalBehaviorFamily<T> conditional_family(const FiniteLocalModel<T>& model, std::size_t source,
                                                std::uint64_t grid_cap) {
  if (source >= model.sources().size()) throw std::domain_error("source index out of range");
  ConditionalBehaviorFamily<T> family{source, {}};
  const auto& dist = model.sources()[source];
  for (std::size_t mu = 0; mu < dist.size(); ++mu)
    family.members.push_back({static_cast<int>(mu), evaluate(pin_source(model, source, static_cast<int>(mu)), grid_cap),
                              dist[mu]});
  return family;
}

std::vector<Rational> caratheodory_reduce(const std::vector<RationalVector>& points,
                                          const std::vector<Rational>& weights) {
  if (points.size() != weights.size()) throw std::domain_error("points and weights differ in count");
  if (points.empty()) return {};
  const std::size_t dim = points.front().size();
  Rational total = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != dim) throw std::domain_error("points have inconsistent dimensions");
    if (sgn(weights[k]) < 0) throw std::domain_error("weights must be nonnegative");
    total += weights[k];
  }
  if (total != 1) throw std::domain_error("weights must sum to 1");

  std::vector<Rational> w = weights;
  for (;;) {
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (sgn(w[k]) > 0) support.push_back(k);

    // Columns (1, p_k) for supported k; a null vector is an affine dependency.
    RationalMatrix m(dim + 1, RationalVector(support.size()));
    for (std::size_t c = 0; c < support.size(); ++c) {
      m[0][c] = 1;
      for (std::size_t r = 0; r < dim; ++r) m[r + 1][c] = points[support[c]][r];
    }
    auto dep = first_null_vector(m);
    if (!dep) return w;

    bool has_positive = false;
    for (const auto& v : *dep) has_positive = has_positive || sgn(v) > 0;
    if (!has_positive)
      for (auto& v : *dep) v = -v;

    std::size_t hit = support.size();
    Rational step;
    for (std::size_t c = 0; c < support.size(); ++c) {
      if (sgn((*dep)[c]) <= 0) continue;
      Rational ratio = w[support[c]] / (*dep)[c];
      if (hit == support.size() || ratio < step) {
        hit = c;
        step = ratio;
      }
    }
    for (std::size_t c = 0; c < support.size(); ++c) w[support[c]] -= step * (*dep)[c];
    w[support[hit]] = 0;
  }
}

ExactModel compress_source(const ExactModel& model, std::size_t source, std::uint64_t grid_cap) {
  auto family = conditional_family(model, source, grid_cap);

  // Merge identical conditional behaviors onto their first occurrence.
  std::vector<int> kept_values;
  std::vector<RationalVector> points;
  std::vector<Rational> weights;
  for (const auto& member : family.members) {
    if (sgn(member.weight) == 0) continue;
    bool merged = false;
    for (std::size_t k = 0; k < points.size(); ++k)
      if (points[k] == member.behavior.values()) {
        weights[k] += member.weight;
        merged = true;
        break;
      }
    if (merged) continue;
    kept_values.push_back(member.value);
    points.push_back(member.behavior.values());
    weights.push_back(member.weight);
  }

  auto reduced = caratheodory_reduce(points, weights);
  std::vector<int> chosen;
  std::vector<Rational> new_dist;
  for (std::size_t k = 0; k < reduced.size(); ++k)
    if (sgn(reduced[k]) > 0) {
      chosen.push_back(kept_values[k]);
      new_dist.push_back(reduced[k]);
    }

  const Network& net = model.network();
  auto sources = model.sources();
  sources[source] = new_dist;
  auto responses = model.responses();
  for (std::size_t i = 0; i < net.party_count(); ++i) {
    if (!net.connected(i, source)) continue;
    const auto& old_table = model.responses()[i];
    auto conn = net.sources_of(i);
    std::size_t pos = std::find(conn.begin(), conn.end(), source) - conn.begin();
    ResponseTable<Rational> table;
    table.inputs = old_table.inputs;
    table.outputs = old_table.outputs;
    table.source_cards = old_table.source_cards;
    table.source_cards[pos] = static_cast<int>(chosen.size());
    table.probs.resize(static_cast<std::size_t>(table.inputs) * table.grid() * static_cast<std::size_t>(table.outputs));
    std::vector<int> digits(conn.size(), 0);
    for (std::size_t code = 0; code < table.grid(); ++code) {
      decode_tuple(code, table.source_cards, digits);
      auto old_digits = digits;
      old_digits[pos] = chosen[static_cast<std::size_t>(digits[pos])];
      std::size_t old_code = encode_tuple(old_digits, old_table.source_cards);
      for (int x = 0; x < table.inputs; ++x)
        for (int a = 0; a < table.outputs; ++a) table(x, code, a) = old_table(x, old_code, a);
    }
    responses[i] = std::move(table);
  }
  return ExactModel(net, std::move(sources), std::move(responses));
}

FloatModel compress_source(const FloatModel&, std::size_t, std::uint64_t) {
  throw std::domain_error("compression requires an exact-flavor model");
}

template <class T>
FiniteLocalModel<T> threshold_triangle_model(const std::vector<T>& alpha_values, const std::vector<T>& beta_values,
                                             const std::vector<T>& gamma_values, const std::vector<T>& alpha_weights,
                                             const std::vector<T>& beta_weights,
                                             const std::vector<T>& gamma_weights) {
  const std::vector<T>* lists[3] = {&alpha_values, &beta_values, &gamma_values};
  const std::vector<T>* weights[3] = {&alpha_weights, &beta_weights, &gamma_weights};
  const char* names[3] = {"alpha", "beta", "gamma"};
  for (int s = 0; s < 3; ++s) {
    if (lists[s]->size() != weights[s]->size())
      throw std::domain_error(std::string(names[s]) + " values and weights differ in length");
    for (std::size_t k = 1; k < lists[s]->size(); ++k)
      if (!((*lists[s])[k - 1] < (*lists[s])[k]))
        throw std::domain_error(std::string(names[s]) + " values must be strictly increasing");
  }
  for (int s = 0; s < 3; ++s)
    for (int t = s + 1; t < 3; ++t)
      for (const auto& u : *lists[s])
        for (const auto& v : *lists[t])
          if (u == v)
            throw std::domain_error(std::string("tie between ") + names[s] + " and " + names[t] +
                                    " values; move representatives into open intervals");

  Network net = Network::triangle();
  // Each party stores its connected sources in increasing index order, so
  // A sees (beta, gamma), B sees (alpha, gamma), C sees (alpha, beta).
  auto build = [](const std::vector<T>& first, const std::vector<T>& second, auto one) {
    ResponseTable<T> t;
    t.inputs = 1;
    t.outputs = 2;
    t.source_cards = {static_cast<int>(first.size()), static_cast<int>(second.size())};
    t.probs.assign(t.grid() * 2, T(0));
    for (std::size_t i = 0; i < first.size(); ++i)
      for (std::size_t k = 0; k < second.size(); ++k) {
        int out = one(first[i], second[k]) ? 1 : 0;
        t(0, i * second.size() + k, out) = 1;
      }
    return t;
  };
  std::vector<ResponseTable<T>> responses{
      build(beta_values, gamma_values, [](const T& b, const T& g) { return b >= g; }),
      build(alpha_values, gamma_values, [](const T& a, const T& g) { return g >= a; }),
      build(alpha_values, beta_values, [](const T& a, const T& b) { return a >= b; }),
  };
  return FiniteLocalModel<T>(net, {alpha_weights, beta_weights, gamma_weights}, std::move(responses));
}

ExactModel pneq_bit_model() {
  using Q = Rational;
  Network net = Network::triangle();
  auto table = [] {
    ResponseTable<Q> t;
    t.inputs = 1;
    t.outputs = 2;
    t.source_cards = {2, 2};
    t.probs.assign(8, Q(0));
    return t;
  };
  ResponseTable<Q> ta = table(), tb = table(), tc = table();
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) {
      std::size_t code = static_cast<std::size_t>(u * 2 + v);
      ta(0, code, u * v) = 1;       // (beta, gamma): a = beta * gamma
      tb(0, code, 1 ^ (u * v)) = 1; // (alpha, gamma): b = 1 xor gamma * alpha
      if (u == v) {                 // (alpha, beta)
        tc(0, code, 0) = Q(1, 2);
        tc(0, code, 1) = Q(1, 2);
      } else {
        tc(0, code, u) = 1;
      }
    }
  return ExactModel(net, {{Q(1, 3), Q(2, 3)}, {Q(1, 3), Q(2, 3)}, {Q(1, 4), Q(3, 4)}}, {ta, tb, tc});
}

FloatModel pneq_threshold_model() {
  const double s3 = std::sqrt(3.0);
  const double a1 = (3.0 - s3) / 12.0;
  std::vector<double> alpha{a1, 0.5, 1.0 - a1};
  std::vector<double> alpha_w{(3.0 - s3) / 6.0, 1.0 - (3.0 - s3) / 3.0, (3.0 - s3) / 6.0};
  std::vector<double> beta{(3.0 - s3) / 6.0, (3.0 + s3) / 6.0};
  std::vector<double> beta_w{0.5, 0.5};
  // One representative inside each open interval cut by {0, alpha, beta, 1}.
  std::vector<double> cuts{0.0, alpha[0], beta[0], alpha[1], beta[1], alpha[2], 1.0};
  std::vector<double> gamma;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) gamma.push_back(0.5 * (cuts[k] + cuts[k + 1]));
  const double w_out = (3.0 - s3) / 12.0, w_in = 1.0 / (2.0 * s3);
  std::vector<double> gamma_w{w_out, w_out, w_in, w_in, w_out, w_out};
  return threshold_triangle_model(alpha, beta, gamma, alpha_w, beta_w, gamma_w);
}

ExactBehavior pneq_behavior() {
  using Q = Rational;
  return ExactBehavior(Network::triangle(), {Q(0), Q(1, 6), Q(1, 6), Q(1, 6), Q(1, 6), Q(1, 6), Q(1, 6), Q(0)});
}

ExactBehavior peq_behavior() {
  using Q = Rational;
  return ExactBehavior(Network::triangle(), {Q(1, 2), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(1, 2)});
}

template struct ResponseTable<Rational>;
template struct ResponseTable<double>;
template class FiniteLocalModel<Rational>;
template class FiniteLocalModel<double>;
template BasicBehavior<Rational> evaluate(const FiniteLocalModel<Rational>&, std::uint64_t);
template BasicBehavior<double> evaluate(const FiniteLocalModel<double>&, std::uint64_t);
template FiniteLocalModel<Rational> pin_source(const FiniteLocalModel<Rational>&, std::size_t, int);
template FiniteLocalModel<double> pin_source(const FiniteLocalModel<double>&, std::size_t, int);
template ConditionalBehaviorFamily<Rational> conditional_family(const FiniteLocalModel<Rational>&, std::size_t,
                                                                std::uint64_t);
template ConditionalBehaviorFamily<double> conditional_family(const FiniteLocalModel<double>&, std::size_t,
                                                              std::uint64_t);
template FiniteLocalModel<Rational> threshold_triangle_model(const std::vector<Rational>&, const std::vector<Rational>&,
                                                             const std::vector<Rational>&, const std::vector<Rational>&,
                                                             const std::vector<Rational>&,
                                                             const std::vector<Rational>&);
template FiniteLocalModel<double> threshold_triangle_model(const std::vector<double>&, const std::vector<double>&,
                                                           const std::vector<double>&, const std::vector<double>&,
                                                           const std::vector<double>&, const std::vector<double>&);

} // namespace netloc

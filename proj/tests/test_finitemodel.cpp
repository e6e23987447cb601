#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cmath>

using namespace netloc;
using testsupport::Rng;
using Q = Rational;

TEST_CASE("bit model reproduces P_neq exactly") {
  auto p = evaluate(pneq_bit_model());
  CHECK(p == pneq_behavior());
  CHECK(p.values() == testsupport::oracle_evaluate(pneq_bit_model()));
}

TEST_CASE("threshold model reproduces P_neq in floating point") {
  auto m = pneq_threshold_model();
  CHECK(m.cards() == std::vector<int>{3, 2, 6});
  auto p = evaluate(m);
  auto target = to_float(pneq_behavior());
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(p[k] - target[k]) < 1e-10);
}

TEST_CASE("threshold models reject ties and unsorted values") {
  std::vector<Q> half{Q(1, 2)}, one{Q(1)};
  CHECK_THROWS_AS(threshold_triangle_model<Q>(half, half, {Q(1, 4)}, one, one, one), std::domain_error);
  CHECK_THROWS_AS(threshold_triangle_model<Q>({Q(1, 2), Q(1, 4)}, {Q(1, 3)}, {Q(1, 5)}, {Q(1, 2), Q(1, 2)}, one, one),
                  std::domain_error);
  auto ok = threshold_triangle_model<Q>({Q(1, 4)}, {Q(1, 2)}, {Q(3, 4)}, one, one, one);
  // a = [beta >= gamma] = 0, b = [gamma >= alpha] = 1, c = [alpha >= beta] = 0
  auto p = evaluate(ok);
  CHECK(p[2] == 1);
}

TEST_CASE("model validation") {
  auto tri = Network::triangle();
  auto good = pneq_bit_model();
  auto sources = good.sources();
  sources[0] = {Q(1, 2), Q(1, 3)};
  CHECK_THROWS_AS(ExactModel(tri, sources, good.responses()), std::domain_error);
  auto responses = good.responses();
  responses[2].probs[0] = Q(2, 3);
  CHECK_THROWS_AS(ExactModel(tri, good.sources(), responses), std::domain_error);
  responses = good.responses();
  responses[1].source_cards = {3, 2};
  CHECK_THROWS_AS(ExactModel(tri, good.sources(), responses), std::domain_error);
}

TEST_CASE("evaluation respects the grid cap") {
  Rng rng(3);
  auto m = testsupport::random_model(rng, Network::triangle(), {4, 4, 4});
  CHECK_THROWS_AS(evaluate(m, 10), ResourceError);
  CHECK_NOTHROW(evaluate(m, 64));
}

TEST_CASE("evaluate agrees with the explicit-sum oracle") {
  Rng rng(17);
  std::vector<Network> nets{Network::triangle(), Network::bilocal({{2, 2}, {2, 3}, {1, 2}}),
                            Network::bell({{2, 2}, {3, 2}})};
  for (int trial = 0; trial < 40; ++trial) {
    const auto& net = nets[static_cast<std::size_t>(trial) % nets.size()];
    std::vector<int> cards;
    for (std::size_t j = 0; j < net.source_count(); ++j) cards.push_back(testsupport::uniform_int(rng, 1, 3));
    auto m = testsupport::random_model(rng, net, cards);
    CHECK(evaluate(m).values() == testsupport::oracle_evaluate(m));
  }
}

TEST_CASE("conditional family averages back to the behavior") {
  Rng rng(23);
  auto m = testsupport::random_model(rng, Network::triangle(), {3, 2, 2});
  auto fam = conditional_family(m, 0);
  REQUIRE(fam.members.size() == 3);
  std::vector<Q> mix(8, Q(0));
  for (const auto& mem : fam.members)
    for (std::size_t k = 0; k < 8; ++k) mix[k] += mem.weight * mem.behavior[k];
  CHECK(mix == evaluate(m).values());

  // Pinning a source leaves marginals of the parties not reading it unchanged.
  for (const auto& mem : fam.members) {
    Q a0 = 0, base = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      a0 += mem.behavior[k];
      base += evaluate(m)[k];
    }
    CHECK(a0 == base);
  }
}

TEST_CASE("caratheodory reduction") {
  // Four corners of a square plus the centre: at most three points remain.
  std::vector<RationalVector> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {Q(1, 2), Q(1, 2)}};
  std::vector<Q> w(5, Q(1, 5));
  auto r = caratheodory_reduce(pts, w);
  int support = 0;
  RationalVector mean(2, Q(0));
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(sgn(r[k]) >= 0);
    if (sgn(r[k]) > 0) ++support;
    for (std::size_t i = 0; i < 2; ++i) mean[i] += r[k] * pts[k][i];
  }
  CHECK(support <= 3);
  CHECK(mean == RationalVector{Q(1, 2), Q(1, 2)});
  CHECK_THROWS_AS(caratheodory_reduce(pts, std::vector<Q>(5, Q(1, 4))), std::domain_error);
  CHECK(caratheodory_reduce({{1, 2}}, {Q(1)}) == std::vector<Q>{Q(1)});
}

TEST_CASE("compression of the source of a triangle model") {
  Rng rng(29);
  auto m = testsupport::random_model(rng, Network::triangle(), {12, 2, 3});
  auto c = compress_source(m, 0);
  CHECK(c.cards()[0] <= 7);
  CHECK(c.cards()[1] == 2);
  CHECK(evaluate(c) == evaluate(m));
  CHECK_THROWS_AS(compress_source(pneq_threshold_model(), 0), std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "netloc/netcore.hpp"

using namespace netloc;
using testsupport::Rng;

namespace {

Network chsh() { return Network::bell({{2, 2}, {2, 2}}); }

ExactBehavior pr_box() {
  auto net = chsh();
  std::vector<Rational> v(16);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          std::vector<int> in{x, y}, out{a, b};
          v[behavior_index(net, in, out)] = ((a ^ b) == (x & y)) ? Rational(1, 2) : Rational(0);
        }
  return {net, v};
}

} // namespace

TEST_CASE("network invariants") {
  CHECK_THROWS_AS(Network({{1, 2}}, {{0}}), std::domain_error);           // party without a source
  CHECK_THROWS_AS(Network({{1, 2}}, {{1, 0}}), std::domain_error);        // dangling source
  CHECK_THROWS_AS(Network({{0, 2}}, {{1}}), std::domain_error);           // empty alphabet
  CHECK_NOTHROW(Network({{1, 1}}, {{1}}));
  auto tri = Network::triangle();
  CHECK(tri.party_count() == 3);
  CHECK(tri.source_count() == 3);
  CHECK(tri.dimension() == 8);
  CHECK(tri.is_connected());
  CHECK_FALSE(Network({{1, 2}, {1, 2}}, {{1, 0}, {0, 1}}).is_connected());
}

TEST_CASE("behavior index examples") {
  auto tri = Network::triangle();
  std::vector<int> none{0, 0, 0};
  CHECK(behavior_index(tri, none, std::vector<int>{0, 0, 0}) == 0);
  CHECK(behavior_index(tri, none, std::vector<int>{1, 1, 1}) == 7);
  CHECK(behavior_index(tri, none, std::vector<int>{1, 0, 0}) == 4);

  auto bsm = Network::bilocal({{2, 2}, {2, 4}, {2, 2}});
  CHECK(behavior_index(bsm, std::vector<int>{0, 0, 0}, std::vector<int>{0, 0, 0}) == 0);
  CHECK(behavior_index(bsm, std::vector<int>{0, 0, 1}, std::vector<int>{0, 0, 0}) == 16);

  try {
    behavior_index(tri, none, std::vector<int>{0, 2, 0});
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("party 1") != std::string::npos);
  }
}

TEST_CASE("behavior index round trip on random networks") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int m = testsupport::uniform_int(rng, 1, 4);
    std::vector<Party> parties;
    std::vector<std::vector<int>> inc;
    for (int i = 0; i < m; ++i) {
      parties.push_back({testsupport::uniform_int(rng, 1, 3), testsupport::uniform_int(rng, 1, 3)});
      inc.push_back({1});
    }
    Network net(parties, inc);
    for (std::size_t k = 0; k < net.dimension(); ++k) {
      auto t = behavior_unindex(net, k);
      REQUIRE(behavior_index(net, t.inputs, t.outputs) == k);
    }
  }
}

TEST_CASE("behavior validation") {
  auto tri = Network::triangle();
  CHECK_THROWS_AS(ExactBehavior(tri, std::vector<Rational>(8, Rational(1, 7))), std::domain_error);
  std::vector<Rational> neg(8, Rational(0));
  neg[0] = 2;
  neg[1] = -1;
  CHECK_THROWS_AS(ExactBehavior(tri, neg), std::domain_error);
  CHECK_NOTHROW(FloatBehavior(tri, std::vector<double>(8, 0.125 + 1e-14)));
  CHECK_THROWS_AS(FloatBehavior(tri, std::vector<double>(8, 0.126)), std::domain_error);
}

TEST_CASE("nonsignaling examples") {
  auto net = chsh();
  CHECK(is_nonsignaling(ExactBehavior(net, std::vector<Rational>(16, Rational(1, 4)))).nonsignaling);
  CHECK(is_nonsignaling(pr_box()).nonsignaling);

  // Alice outputs Bob's input.
  std::vector<Rational> v(16, Rational(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int b = 0; b < 2; ++b) {
        std::vector<int> in{x, y}, out{y, b};
        v[behavior_index(net, in, out)] = Rational(1, 2);
      }
  auto report = is_nonsignaling(ExactBehavior(net, v));
  CHECK_FALSE(report.nonsignaling);
  CHECK_FALSE(report.violations.empty());
}

TEST_CASE("affine dimensions") {
  CHECK(affine_dimension(Network::triangle()) == 7);
  CHECK(affine_dimension(Network::bilocal({{2, 2}, {2, 2}, {2, 2}})) == 26);
  std::vector<Party> bc{{2, 2}, {2, 2}};
  CHECK(affine_dimension(bc) == 8);
  std::vector<Party> single{{1, 2}};
  CHECK(affine_dimension(single) == 1);
  CHECK(affine_dimension(std::vector<Party>{}) == 0);

  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Party> ps;
    int m = testsupport::uniform_int(rng, 1, 3);
    for (int i = 0; i < m; ++i) ps.push_back({testsupport::uniform_int(rng, 1, 2), testsupport::uniform_int(rng, 1, 3)});
    CHECK(affine_dimension(ps) == testsupport::oracle_affine_dimension(ps));
    // monotone in every alphabet
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto more = ps;
      ++more[i].outputs;
      CHECK(affine_dimension(more) >= affine_dimension(ps));
      more = ps;
      ++more[i].inputs;
      CHECK(affine_dimension(more) >= affine_dimension(ps));
    }
  }
}

TEST_CASE("cardinality bounds") {
  CHECK(cardinality_bound_basic(Network::triangle()) == 9);
  CHECK(cardinality_bound_basic(Network::bilocal({{2, 2}, {2, 4}, {2, 2}})) == 129);
  CHECK(cardinality_bound_basic(Network::bilocal({{2, 2}, {2, 2}, {2, 2}})) == 65);
  CHECK(cardinality_bound_basic(Network({{1, 1}}, {{1}})) == 2);

  for (std::size_t j = 0; j < 3; ++j) CHECK(cardinality_bound_refined(Network::triangle(), j).value == 6);
  auto two = cardinality_bound_refined(Network::bell({{1, 2}, {1, 2}}), 0);
  CHECK(two.value == 3);
  CHECK_FALSE(two.note.empty());
  // affdim(ABC) - affdim(C) for the source shared by A and B
  CHECK(cardinality_bound_refined(Network::bilocal({{2, 2}, {2, 2}, {2, 2}}), 0).value == 24);

  auto bsm = Network::bilocal({{2, 2}, {2, 4}, {2, 2}});
  for (std::size_t j = 0; j < bsm.source_count(); ++j)
    CHECK(cardinality_bound_refined(bsm, j).value <= affine_dimension(bsm));
}

TEST_CASE("relaxation sizes") {
  CHECK(relaxation_size(6).degrees_of_freedom == 123);
  CHECK(relaxation_size(6).matrix_side == 7626);
  CHECK(relaxation_size(5).matrix_side == 3828);
  CHECK(relaxation_size(4).matrix_side == 1653);
  CHECK_THROWS_AS(relaxation_size(0), std::domain_error);
}

TEST_CASE("party split") {
  auto split = party_split(Network::bilocal({{2, 2}, {2, 2}, {2, 2}}), 1);
  CHECK(split.aSide == std::vector<std::size_t>{1, 2});
  CHECK(split.bSide == std::vector<std::size_t>{0});
}

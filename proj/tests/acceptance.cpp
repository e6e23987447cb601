// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "properties.hpp"
#include "support.hpp"

#include "netloc/bellpoly.hpp"
#include "netloc/json_io.hpp"
#include "netloc/polysos.hpp"
#include "netloc/quantumcorr.hpp"
#include "netloc/trianglesearch.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace netloc;
using testsupport::Rng;
using Q = Rational;

namespace {

const std::filesystem::path kData = NETLOC_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> analysis;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

template <class T>
std::string show(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void affine_dimensions(Outcome& o) {
  const std::vector<Party> bin{{2, 2}, {2, 2}, {2, 2}};
  const std::vector<Party> bc{{2, 2}, {2, 2}};
  const std::vector<Party> single{{1, 2}};
  const std::int64_t tri = affine_dimension(Network::triangle());
  const std::int64_t joint = affine_dimension(Network::bilocal(bin));
  const std::int64_t marg = affine_dimension(bc);
  const std::int64_t one = affine_dimension(single);
  o.require(tri == 7, "triangle " + show(tri));
  o.require(joint == 26, "bilocal " + show(joint));
  o.require(marg == 8, "BC marginal " + show(marg));
  o.require(one == 1, "single party " + show(one));
  o.require(testsupport::oracle_affine_dimension({{1, 2}, {1, 2}, {1, 2}}) == tri &&
                testsupport::oracle_affine_dimension(bin) == joint &&
                testsupport::oracle_affine_dimension(bc) == marg && testsupport::oracle_affine_dimension(single) == one,
            "oracle disagrees");
  o.detail << "triangle " << tri << ", bilocal " << joint << ", BC marginal " << marg << ", single " << one
           << " (rank oracle agrees)";
}

void refined_bounds(Outcome& o) {
  const Network bilocal = io::network_from_json(io::read_file(kData / "bilocal.json"));
  const std::int64_t tri = cardinality_bound_refined(Network::triangle(), 0).value;
  const std::int64_t bil = cardinality_bound_refined(bilocal, 0).value;
  const auto two = cardinality_bound_refined(Network::bell({{1, 2}, {1, 2}}), 0);
  o.require(tri == 6, "triangle " + show(tri));
  o.require(bil == 18, "bilocal lambda_AB gives " + show(bil) + ", expected 18");
  o.require(two.value == 3, "two-party " + show(two.value));
  if (o.pass) o.detail << "triangle 6, bilocal 18, two-party 3";
  else o.detail << " (triangle " << tri << ", two-party " << two.value << ")";
  if (bil != 18) {
    const std::int64_t all = affine_dimension(bilocal);
    const std::int64_t c_only = affine_dimension(std::vector<Party>{bilocal.parties()[2]});
    const std::int64_t bc = affine_dimension(std::vector<Party>{bilocal.parties()[1], bilocal.parties()[2]});
    o.analysis = {
        "The bound for a source is affdim(all parties) minus affdim(parties that do not read it).",
        "lambda_AB is read by A and B, so only P(c|z) stays fixed: " + show(all) + " - " + show(c_only) + " = " +
            show(bil) + ".",
        "18 = " + show(all) + " - " + show(bc) + " subtracts affdim P(bc|yz) = " + show(bc) +
            ", but B reads lambda_AB and its marginal is not fixed.",
        "The formula is kept as stated. Triangle 6 and two-party 3 still hold.",
    };
  }
}

void relaxation_sizes(Outcome& o) {
  const std::vector<std::pair<int, std::int64_t>> want{{6, 7626}, {5, 3828}, {4, 1653}};
  for (auto [r, side] : want) {
    auto s = relaxation_size(r);
    o.require(s.matrix_side == side, "r=" + show(r) + " gives " + show(s.matrix_side));
    o.detail << (r == 6 ? "" : ", ") << "r=" << r << ": D=" << s.degrees_of_freedom << ", side " << s.matrix_side;
  }
}

void bit_model(Outcome& o) {
  auto m = io::exact_model_from_json(io::load(kData / "pneq-bit-model.json"));
  auto b = evaluate(m);
  std::vector<Q> want{0, Q(1, 6), Q(1, 6), Q(1, 6), Q(1, 6), Q(1, 6), Q(1, 6), 0};
  o.require(b.values() == want, "behavior differs from P_neq");
  o.require(m == pneq_bit_model(), "data file differs from the built-in model");
  o.detail << "cards (" << m.cards()[0] << "," << m.cards()[1] << "," << m.cards()[2]
           << ") evaluates to (0,1,1,1,1,1,1,0)/6 exactly";
}

void threshold_model(Outcome& o) {
  auto m = io::float_model_from_json(io::load(kData / "pneq-threshold-model.json"));
  auto b = evaluate(m);
  double err = 0;
  for (std::size_t k = 0; k < 8; ++k) err = std::max(err, std::abs(b[k] - to_double(pneq_behavior()[k])));
  o.require(err <= 1e-10, "max error " + show(err));
  o.require(m.cards() == std::vector<int>{3, 2, 6}, "cards are not (3,2,6)");
  o.detail << "cards (3,2,6), max deviation " << std::scientific << std::setprecision(1) << err;
}

void compression(Outcome& o) {
  int seeds = 0, worst = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Rng rng(seed);
    auto m = testsupport::random_model(rng, Network::triangle(), {20, testsupport::uniform_int(rng, 1, 3),
                                                                  testsupport::uniform_int(rng, 1, 3)});
    auto c = compress_source(m, 0);
    o.require(c.cards()[0] <= 8, "seed " + show(seed) + " keeps " + show(c.cards()[0]) + " values");
    o.require(evaluate(c) == evaluate(m), "seed " + show(seed) + " changes the behavior");
    worst = std::max(worst, c.cards()[0]);
    ++seeds;
  }
  o.detail << seeds << " seeds, c1 = 20 -> at most " << worst << ", behaviors identical";
}

void bell_lp(Outcome& o) {
  auto pr = io::exact_behavior_from_json(io::load(kData / "pr-box.json"));
  auto s = enumerate_strategies(pr.network());
  o.require(s.size() == 16, "strategy count " + show(s.size()));
  auto r = membership_lp(pr);
  if (auto* c = std::get_if<LocalityCertificate>(&r)) {
    bool all_nonneg = true;
    for (const auto& col : s.columns) all_nonneg = all_nonneg && sgn(dot(c->xi, col)) >= 0;
    o.require(all_nonneg && sgn(dot(c->xi, pr.values())) < 0 && verify_certificate(s, *c, pr),
              "certificate does not verify");
    o.detail << "PR box Nonlocal, xi.P = " << c->value << ", " << c->tight_strategies.size() << " tight; ";
  } else {
    o.require(false, "PR box reported local");
  }
  Rng rng(7);
  int reproduced = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto w = testsupport::random_distribution(rng, 16);
    std::vector<Q> v(16, Q(0));
    for (std::size_t l = 0; l < 16; ++l)
      for (std::size_t k = 0; k < 16; ++k) v[k] += w[l] * s.columns[l][k];
    ExactBehavior b(pr.network(), v);
    auto m = membership_lp(b);
    const auto* d = std::get_if<Decomposition>(&m);
    if (!d) continue;
    std::vector<Q> back(16, Q(0));
    for (std::size_t l = 0; l < 16; ++l) {
      for (std::size_t k = 0; k < 16; ++k) back[k] += d->weights[l] * s.columns[l][k];
    }
    Q total = 0;
    for (const auto& x : d->weights) total += x;
    bool nonneg = std::all_of(d->weights.begin(), d->weights.end(), [](const Q& x) { return x >= 0; });
    if (back == v && total == 1 && nonneg) ++reproduced;
  }
  o.require(reproduced == 200, show(200 - reproduced) + " mixtures not reproduced");
  o.detail << reproduced << "/200 mixtures Local and reproduced";
}

void facets(Outcome& o) {
  auto net = io::network_from_json(io::read_file(kData / "chsh.json"));
  auto fs = facet_enumeration(net);
  CollinsGisinChart chart(net);
  auto s = enumerate_strategies(net);
  std::vector<RationalVector> pts;
  for (const auto& col : s.columns) pts.push_back(chart.project(col));
  std::vector<RationalVector> ours;
  for (const auto& f : fs) {
    RationalVector z{f.offset};
    z.insert(z.end(), f.coeffs.begin(), f.coeffs.end());
    ours.push_back(z);
  }
  o.require(ours == testsupport::oracle_facets(pts), "facet list differs from the brute-force hull");
  std::size_t min_tight = 16;
  for (const auto& f : fs) {
    std::set<Q> values;
    for (const auto& col : s.columns) values.insert(dot(f.xi, col));
    Q k = *values.rbegin();
    bool contiguous = *values.begin() == 0 && values.size() == static_cast<std::size_t>(k.get_num().get_si()) + 1 &&
                      k.get_den() == 1;
    o.require(contiguous, "facet value range is not {0..k}");
    o.require(f.tight_strategies.size() >= 8, "facet with " + show(f.tight_strategies.size()) + " tight vertices");
    min_tight = std::min(min_tight, f.tight_strategies.size());
  }
  o.detail << fs.size() << " facets equal the brute-force hull, ranges {0..k}, min tightness " << min_tight;
}

void possibilistic(Outcome& o) {
  const OutcomeSet peq = support_of(io::exact_behavior_from_json(io::load(kData / "p-eq.json")));
  const OutcomeSet pneq = support_of(io::exact_behavior_from_json(io::load(kData / "p-neq.json")));
  auto a = possibilistic_feasible(peq, {2, 2, 2});
  auto b = possibilistic_feasible(pneq, {2, 2, 2});
  auto b2 = possibilistic_feasible(pneq, {2, 2, 2});
  o.require(std::holds_alternative<Infeasible>(a), "{000,111} reported feasible");
  o.require(std::holds_alternative<SupportPattern>(b), "P_neq support reported infeasible");
  if (std::holds_alternative<SupportPattern>(b)) {
    o.require(std::get<SupportPattern>(b).possible_outcomes() == pneq, "witness has the wrong support");
    o.require(std::holds_alternative<SupportPattern>(b2) && std::get<SupportPattern>(b2) == std::get<SupportPattern>(b),
              "witness is not deterministic");
    o.detail << "{000,111} Infeasible; P_neq support Feasible, witness " << std::get<SupportPattern>(b).to_string();
  }
}

void triangle_search(Outcome& o) {
  auto target = io::exact_behavior_from_json(io::load(kData / "p-neq.json"));
  auto rep = enumerate_and_prune(target, 0);
  auto stab = TriangleSymmetry::stabilizer({2, 2, 2}, support_of(target));
  auto known = canonical(pneq_bit_pattern(), stab);
  bool survives = std::find(rep.survivors.begin(), rep.survivors.end(), known) != rep.survivors.end();
  o.require(rep.total == 531441, "enumerated " + show(rep.total) + " patterns");
  o.require(survives, "known pattern pruned");
  auto r = numeric_feasibility(FeasibilityProblem(known), target);
  if (const auto* m = std::get_if<ExactModel>(&r)) {
    o.require(evaluate(*m) == target, "recovered model does not reproduce P_neq");
    o.detail << rep.total << " patterns, " << rep.support_matches << " support matches, " << rep.survivors.size()
             << " canonical survivors; known pattern " << known.to_string() << " survives; exact model recovered";
  } else {
    o.require(false, "numeric_feasibility found no model");
  }
}

void sos_certificate(Outcome& o) {
  auto rep = verify_bilocal_certificate();
  std::set<std::string> groups;
  for (const auto& id : rep.identities) groups.insert(id.group);
  o.require(groups == std::set<std::string>{"i", "ii", "iii", "iv", "v"}, "identity groups incomplete");
  o.require(rep.bound == Q(2, 3), "bound " + to_string(rep.bound));
  o.detail << rep.identities.size() << " exact identities in groups i-v hold; eta_bound = " << rep.bound;
}

void quantum(Outcome& o) {
  double worst = 0, worst_norm = 0, min_p = 1;
  for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    auto t = full_table(eta, false);
    worst = std::max(worst, t.max_error);
    auto p = outcome_probabilities(build_operators(eta));
    for (int block = 0; block < 4; ++block) {
      double sum = 0;
      for (int k = 0; k < 16; ++k) {
        double v = p[static_cast<std::size_t>(block * 16 + k)];
        min_p = std::min(min_p, v);
        sum += v;
      }
      worst_norm = std::max(worst_norm, std::abs(sum - 1));
    }
  }
  o.require(worst <= 1e-12, "table error " + show(worst));
  o.require(min_p >= -1e-12, "negative probability " + show(min_p));
  o.require(worst_norm <= 1e-12, "normalization error " + show(worst_norm));
  o.detail << std::scientific << std::setprecision(1) << "table error " << worst << ", min probability " << min_p
           << ", normalization error " << worst_norm;
}

void properties(Outcome& o) {
  auto sym = testsupport::symmetric_model_impossibility(1001, 500);
  auto ns = testsupport::nonsignaling_of_models(1002, 200);
  auto car = testsupport::caratheodory_mean(1003, 200);
  o.require(sym.ok(), "symmetric models: " + sym.first_failure);
  o.require(ns.ok(), "nonsignaling: " + ns.first_failure);
  o.require(car.ok(), "Caratheodory: " + car.first_failure);
  o.detail << "symmetric models " << sym.trials << ", nonsignaling " << ns.trials << ", Caratheodory " << car.trials
           << " trials";
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"affine dimensions", affine_dimensions},
      {"refined cardinality bounds", refined_bounds},
      {"relaxation sizes", relaxation_sizes},
      {"exact (2,2,2) model", bit_model},
      {"float (3,2,6) threshold model", threshold_model},
      {"compression", compression},
      {"Bell LP", bell_lp},
      {"CHSH facets", facets},
      {"possibilistic checker", possibilistic},
      {"triangle search", triangle_search},
      {"SOS certificate", sos_certificate},
      {"quantum table", quantum},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << std::setw(2) << i + 1 << "  " << criteria[i].first << " ["
              << std::fixed << std::setprecision(2) << secs << " s]: " << o.detail.str() << "\n";
    for (const auto& line : o.analysis) std::cout << "        " << line << "\n";
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}

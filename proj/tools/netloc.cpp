// Command-line front end. Results go to stdout (or --out) as JSON.
//
// Exit codes: 0 success, 1 negative answer to a decision query,
// 2 usage or input error, 3 resource cap exceeded.

#include "netloc/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace netloc;
using io::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

struct RunConfig {
  std::string flavor;
  unsigned threads = 1;
  std::uint64_t cap = 0; // 0: the subcommand's default
  std::string out;
};

void emit(const RunConfig& cfg, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw io::JsonError("cannot write " + cfg.out);
  f << text;
}

Flavor pick_flavor(const RunConfig& cfg, const json& doc) {
  if (cfg.flavor.empty()) return io::flavor_from(doc);
  return cfg.flavor == "float" ? Flavor::Float : Flavor::Exact;
}

std::uint64_t cap_or(const RunConfig& cfg, std::uint64_t fallback) { return cfg.cap ? cfg.cap : fallback; }

Cards parse_cards(const std::string& text) {
  Cards c{};
  std::stringstream in(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(in, item, ',')) {
    if (k == 3) throw std::domain_error("--cards takes three values");
    c[k++] = std::stoi(item);
  }
  if (k != 3) throw std::domain_error("--cards takes three values");
  return c;
}

int cmd_bound(const RunConfig& cfg, const std::string& path) {
  auto doc = io::load(path);
  const json& nj = doc.value.contains("network") ? doc.value.at("network") : doc.value;
  Network n = io::network_from_json(nj, doc.base_dir);
  json sources = json::array();
  for (std::size_t j = 0; j < n.source_count(); ++j) {
    auto r = cardinality_bound_refined(n, j);
    json s = {{"source", j}, {"refined", r.value}};
    if (!r.note.empty()) s["note"] = r.note;
    sources.push_back(s);
  }
  json out = {{"kind", "bounds"},
              {"dimension", n.dimension()},
              {"affine_dimension", affine_dimension(n)},
              {"basic", cardinality_bound_basic(n)},
              {"sources", sources}};
  if (!n.is_connected()) out["warning"] = "network is disconnected";
  emit(cfg, out);
  return kOk;
}

int cmd_relax(const RunConfig& cfg, std::int64_t rank) {
  auto r = relaxation_size(rank);
  emit(cfg, {{"kind", "relaxation-size"}, {"rank", rank}, {"D", r.degrees_of_freedom}, {"side", r.matrix_side}});
  return kOk;
}

int cmd_eval(const RunConfig& cfg, const std::string& path) {
  auto doc = io::load(path);
  if (pick_flavor(cfg, doc.value) == Flavor::Float) {
    emit(cfg, io::behavior_to_json(evaluate(io::float_model_from_json(doc), cap_or(cfg, kDefaultGridCap))));
  } else {
    emit(cfg, io::behavior_to_json(evaluate(io::exact_model_from_json(doc), cap_or(cfg, kDefaultGridCap))));
  }
  return kOk;
}

int cmd_compress(const RunConfig& cfg, const std::string& path, int source) {
  auto doc = io::load(path);
  if (pick_flavor(cfg, doc.value) == Flavor::Float)
    throw std::domain_error("compression is exact only; use --flavor exact with rational data");
  ExactModel m = io::exact_model_from_json(doc);
  const auto grid_cap = cap_or(cfg, kDefaultGridCap);
  const auto before = evaluate(m, grid_cap);
  std::vector<int> cards_before = m.cards();
  if (source >= 0) {
    m = compress_source(m, static_cast<std::size_t>(source), grid_cap);
  } else {
    for (std::size_t j = 0; j < m.network().source_count(); ++j) m = compress_source(m, j, grid_cap);
  }
  if (!(evaluate(m, grid_cap) == before)) throw std::logic_error("compression changed the behavior");
  json out = io::model_to_json(m);
  out["cards_before"] = cards_before;
  out["cards_after"] = m.cards();
  emit(cfg, out);
  return kOk;
}

int cmd_bell_test(const RunConfig& cfg, const std::string& path) {
  auto doc = io::load(path);
  ExactBehavior b = io::exact_behavior_from_json(doc);
  auto r = membership_lp(b);
  if (auto* d = std::get_if<Decomposition>(&r)) {
    json out = io::decomposition_to_json(enumerate_strategies(b.network()), *d);
    out["verdict"] = "Local";
    emit(cfg, out);
    return kOk;
  }
  json out = io::certificate_to_json(std::get<LocalityCertificate>(r));
  out["verdict"] = "Nonlocal";
  emit(cfg, out);
  return kNegative;
}

int cmd_bell_facets(const RunConfig& cfg, const std::string& path) {
  auto doc = io::load(path);
  const json& nj = doc.value.contains("network") ? doc.value.at("network") : doc.value;
  Network n = io::network_from_json(nj, doc.base_dir);
  auto facets = facet_enumeration(n, cap_or(cfg, kFacetStrategyCap));
  CollinsGisinChart chart(n);
  emit(cfg, {{"kind", "facets"},
             {"chart_dimension", chart.dimension()},
             {"count", facets.size()},
             {"facets", io::facets_to_json(facets)}});
  return kOk;
}

int cmd_triangle_search(const RunConfig& cfg, const std::string& path, const std::string& cards_text,
                        std::size_t starts) {
  if (parse_cards(cards_text) != Cards{2, 2, 2})
    throw std::domain_error("the pattern search runs at cards 2,2,2; use possibilistic for other cards");
  auto doc = io::load(path);
  ExactBehavior target = io::exact_behavior_from_json(doc);
  auto report = enumerate_and_prune(target, cfg.threads);
  json survivors = json::array();
  json models = json::array();
  NumericOptions opts;
  opts.starts = starts;
  for (const auto& p : report.survivors) {
    json s = io::pattern_to_json(p);
    auto res = numeric_feasibility(FeasibilityProblem(p), target, opts);
    if (auto* m = std::get_if<ExactModel>(&res)) {
      s["model"] = true;
      json mj = io::model_to_json(*m);
      mj["pattern"] = p.to_string();
      models.push_back(mj);
    } else {
      s["model"] = false;
      s["best_residual"] = std::get<NoSolutionFound>(res).best_residual;
    }
    survivors.push_back(s);
  }
  emit(cfg, {{"kind", "triangle-search"},
             {"support", format_outcome_set(support_of(target))},
             {"patterns", report.total},
             {"support_matches", report.support_matches},
             {"stabilizer_order", report.stabilizer_order},
             {"survivors", survivors},
             {"models", models}});
  return models.empty() ? kNegative : kOk;
}

int cmd_possibilistic(const RunConfig& cfg, const std::string& support, const std::string& cards_text,
                      bool pruned) {
  const OutcomeSet s = parse_outcome_set(support);
  const Cards cards = parse_cards(cards_text);
  auto r = possibilistic_feasible(s, cards, pruned ? PossibilisticMode::Pruned : PossibilisticMode::Exhaustive,
                                  cap_or(cfg, kPossibilisticCap));
  json out = {{"kind", "possibilistic"}, {"support", format_outcome_set(s)}, {"cards", cards},
              {"mode", pruned ? "pruned" : "exhaustive"}};
  if (auto* w = std::get_if<SupportPattern>(&r)) {
    out["verdict"] = "Feasible";
    out["witness"] = io::pattern_to_json(*w);
    emit(cfg, out);
    return kOk;
  }
  out["verdict"] = "Infeasible";
  emit(cfg, out);
  return kNegative;
}

int cmd_sos(const RunConfig& cfg, const std::string& branch, const std::string& bound_text) {
  std::optional<CertificateReport> report;
  if (branch.empty()) {
    report = verify_bilocal_certificate();
  } else {
    if (branch != "zetab" && branch != "xib") throw std::domain_error("--branch takes zetab or xib");
    report = search_certificate(branch == "zetab" ? Branch::ZetaBarIsTwoEta : Branch::XiBarIsTwoEta,
                                parse_rational(bound_text));
  }
  if (!report) {
    emit(cfg, {{"kind", "sos-certificate"}, {"verdict", "NotFound"}, {"branch", branch}, {"bound", bound_text}});
    return kNegative;
  }
  for (const auto& id : report->identities) std::cerr << "[" << id.group << "] " << id.name << ": " << id.rhs << "\n";
  for (const auto& line : report->transcript) std::cerr << line << "\n";
  json out = io::report_to_json(*report);
  out["verdict"] = "Certified";
  emit(cfg, out);
  return kOk;
}

int cmd_quantum(const RunConfig& cfg, double eta) {
  auto table = full_table(eta, false);
  json out = io::quantum_table_to_json(table);
  auto probs = outcome_probabilities(build_operators(eta));
  out["probabilities"] = probs;
  const bool pass = table.max_error <= kFloatTolerance;
  out["verdict"] = pass ? "Match" : "Mismatch";
  emit(cfg, out);
  return pass ? kOk : kNegative;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical correlations in causal networks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--flavor", cfg.flavor, "Number type: exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "Resource cap (grid points, strategies or patterns)")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Write the JSON result here instead of stdout");

  std::string path;
  std::int64_t rank = 0;
  int source = -1;
  std::string cards = "2,2,2";
  std::string support;
  bool pruned = false;
  std::size_t starts = NumericOptions{}.starts;
  std::string branch;
  std::string bound = "2/3";
  double eta = 0.5;

  auto* bound_cmd = app.add_subcommand("bound", "Cardinality bounds per source");
  bound_cmd->add_option("network", path, "Network JSON")->required();
  auto* relax = app.add_subcommand("relax-size", "Moment-matrix size of the degree-2 relaxation");
  relax->add_option("rank", rank, "Rank r")->required()->check(CLI::PositiveNumber);
  auto* eval = app.add_subcommand("eval", "Evaluate a finite local model");
  eval->add_option("model", path, "Model JSON")->required();
  auto* compress = app.add_subcommand("compress", "Shrink source cardinalities without changing the behavior");
  compress->add_option("model", path, "Model JSON")->required();
  compress->add_option("--source", source, "Only this source (default: every source in turn)");
  auto* bell = app.add_subcommand("bell-test", "Local polytope membership with certificate");
  bell->add_option("behavior", path, "Behavior JSON")->required();
  auto* facets = app.add_subcommand("bell-facets", "Facets of the local polytope");
  facets->add_option("network", path, "Network JSON")->required();
  auto* tri = app.add_subcommand("triangle-search", "Support-pattern search for finite triangle models");
  tri->add_option("--target", path, "Target behavior JSON")->required();
  tri->add_option("--cards", cards, "Source cardinalities");
  tri->add_option("--starts", starts, "Local-search starts per pattern")->check(CLI::PositiveNumber);
  auto* poss = app.add_subcommand("possibilistic", "Support-level feasibility on the triangle");
  poss->add_option("--support", support, "Outcomes such as 001,010")->required();
  poss->add_option("--cards", cards, "Source cardinalities");
  poss->add_flag("--pruned", pruned, "Prune by row analysis instead of exhaustive enumeration");
  auto* sos = app.add_subcommand("sos-verify", "Check the bilocal efficiency certificate");
  auto* branch_opt = sos->add_option("--branch", branch, "Search a certificate on a branch instead: zetab or xib");
  sos->add_option("--bound", bound, "Bound to certify with --branch")->needs(branch_opt);
  auto* quantum = app.add_subcommand("quantum-table", "Quantum correlators against the printed table");
  quantum->add_option("--eta", eta, "Detection efficiency")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bound_cmd) return cmd_bound(cfg, path);
    if (*relax) return cmd_relax(cfg, rank);
    if (*eval) return cmd_eval(cfg, path);
    if (*compress) return cmd_compress(cfg, path, source);
    if (*bell) return cmd_bell_test(cfg, path);
    if (*facets) return cmd_bell_facets(cfg, path);
    if (*tri) return cmd_triangle_search(cfg, path, cards, starts);
    if (*poss) return cmd_possibilistic(cfg, support, cards, pruned);
    if (*sos) return cmd_sos(cfg, branch, bound);
    if (*quantum) return cmd_quantum(cfg, eta);
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const io::JsonError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

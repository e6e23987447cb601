#include "netloc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace netloc::io {

namespace fs = std::filesystem;

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string detail = e.what();
    if (auto pos = detail.find("syntax error"); pos != std::string::npos) detail = detail.substr(pos);
    throw JsonError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + detail);
  }
}

json read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path.string());
}

Document load(const fs::path& path) { return {read_file(path), path.parent_path()}; }

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw JsonError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int int_from(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw JsonError(where + ": expected an integer");
  return j.get<int>();
}

template <class T>
T scalar_from(const json& j, const std::string& where);
template <>
Rational scalar_from<Rational>(const json& j, const std::string& where) {
  return rational_from(j, where);
}
template <>
double scalar_from<double>(const json& j, const std::string& where) {
  return double_from(j, where);
}

json scalar_to(const Rational& q) { return to_json(q); }
json scalar_to(double x) { return x; }

template <class T>
std::vector<T> vector_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw JsonError(where + ": expected an array");
  std::vector<T> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(scalar_from<T>(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

template <class T>
json vector_to(const std::vector<T>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to(x));
  return a;
}

Network network_field(const Document& d) {
  return network_from_json(field(d.value, "network", "document"), d.base_dir);
}

template <class T>
BasicBehavior<T> behavior_from(const Document& d) {
  Network n = network_field(d);
  auto values = vector_from<T>(field(d.value, "values", "behavior"), "behavior.values");
  try {
    return BasicBehavior<T>(std::move(n), std::move(values));
  } catch (const std::domain_error& e) {
    throw JsonError(std::string("behavior: ") + e.what());
  }
}

template <class T>
json behavior_json(const BasicBehavior<T>& b, Flavor f) {
  return {{"kind", "behavior"},
          {"flavor", flavor_name(f)},
          {"network", network_to_json(b.network())},
          {"values", vector_to(b.values())}};
}

template <class T>
FiniteLocalModel<T> model_from(const Document& d) {
  Network n = network_field(d);
  const json& src = field(d.value, "sources", "model");
  const json& resp = field(d.value, "responses", "model");
  if (!src.is_array() || !resp.is_array()) throw JsonError("model: sources and responses must be arrays");
  std::vector<std::vector<T>> sources;
  for (std::size_t j = 0; j < src.size(); ++j)
    sources.push_back(vector_from<T>(src[j], "model.sources[" + std::to_string(j) + "]"));

  std::vector<ResponseTable<T>> tables;
  for (std::size_t i = 0; i < resp.size(); ++i) {
    const std::string where = "model.responses[" + std::to_string(i) + "]";
    const json& r = resp[i];
    ResponseTable<T> t;
    if (i >= n.party_count()) throw JsonError(where + ": more response tables than parties");
    t.inputs = n.parties()[i].inputs;
    t.outputs = n.parties()[i].outputs;
    for (std::size_t s : n.sources_of(i)) {
      if (s >= sources.size()) throw JsonError(where + ": source list is too short");
      t.source_cards.push_back(static_cast<int>(sources[s].size()));
    }
    const json& probs = field(r, "probs", where);
    if (!probs.is_array() || probs.size() != static_cast<std::size_t>(t.inputs))
      throw JsonError(where + ".probs: expected one block per input");
    for (std::size_t x = 0; x < probs.size(); ++x) {
      if (!probs[x].is_array() || probs[x].size() != t.grid())
        throw JsonError(where + ".probs[" + std::to_string(x) + "]: expected " + std::to_string(t.grid()) +
                        " source cells");
      for (std::size_t l = 0; l < probs[x].size(); ++l) {
        auto row = vector_from<T>(probs[x][l], where + ".probs");
        if (row.size() != static_cast<std::size_t>(t.outputs)) throw JsonError(where + ": wrong output count");
        t.probs.insert(t.probs.end(), row.begin(), row.end());
      }
    }
    tables.push_back(std::move(t));
  }
  try {
    return FiniteLocalModel<T>(std::move(n), std::move(sources), std::move(tables));
  } catch (const std::domain_error& e) {
    throw JsonError(std::string("model: ") + e.what());
  }
}

template <class T>
json model_json(const FiniteLocalModel<T>& m, Flavor f) {
  json sources = json::array();
  for (const auto& s : m.sources()) sources.push_back(vector_to(s));
  json responses = json::array();
  for (const auto& t : m.responses()) {
    json blocks = json::array();
    for (int x = 0; x < t.inputs; ++x) {
      json cells = json::array();
      for (std::size_t l = 0; l < t.grid(); ++l) {
        json row = json::array();
        for (int a = 0; a < t.outputs; ++a) row.push_back(scalar_to(t(x, l, a)));
        cells.push_back(row);
      }
      blocks.push_back(cells);
    }
    responses.push_back({{"source_cards", t.source_cards}, {"probs", blocks}});
  }
  return {{"kind", "model"},
          {"flavor", flavor_name(f)},
          {"network", network_to_json(m.network())},
          {"sources", sources},
          {"responses", responses}};
}

} // namespace

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw JsonError(where + ": " + e.what());
    }
  }
  throw JsonError(where + ": exact values must be integers, \"num/den\" or decimal strings");
}

double double_from(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  return to_double(rational_from(j, where));
}

json to_json(const Rational& q) { return to_string(q); }

json network_to_json(const Network& n) {
  json parties = json::array();
  for (const auto& p : n.parties()) parties.push_back({{"inputs", p.inputs}, {"outputs", p.outputs}});
  return {{"parties", parties}, {"incidence", n.incidence()}};
}

Network network_from_json(const json& j, const fs::path& base_dir) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "triangle") return Network::triangle();
    fs::path p(name);
    if (p.is_relative()) p = base_dir / p;
    Document d = load(p);
    const json& inner = d.value.contains("network") ? d.value.at("network") : d.value;
    return network_from_json(inner, d.base_dir);
  }
  const json& parties = field(j, "parties", "network");
  const json& incidence = field(j, "incidence", "network");
  if (!parties.is_array() || !incidence.is_array()) throw JsonError("network: parties and incidence must be arrays");
  std::vector<Party> ps;
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const std::string where = "network.parties[" + std::to_string(i) + "]";
    const json& p = parties[i];
    int inputs = p.contains("inputs") ? int_from(p.at("inputs"), where + ".inputs") : 1;
    ps.push_back({inputs, int_from(field(p, "outputs", where), where + ".outputs")});
  }
  std::vector<std::vector<int>> inc;
  for (std::size_t i = 0; i < incidence.size(); ++i) {
    if (!incidence[i].is_array()) throw JsonError("network.incidence: rows must be arrays");
    std::vector<int> row;
    for (const auto& v : incidence[i]) row.push_back(int_from(v, "network.incidence"));
    inc.push_back(std::move(row));
  }
  try {
    return Network(std::move(ps), std::move(inc));
  } catch (const std::domain_error& e) {
    throw JsonError(std::string("network: ") + e.what());
  }
}

Flavor flavor_from(const json& j) {
  if (!j.is_object() || !j.contains("flavor")) return Flavor::Exact;
  const auto& f = j.at("flavor");
  if (f == "exact") return Flavor::Exact;
  if (f == "float") return Flavor::Float;
  throw JsonError("flavor must be \"exact\" or \"float\"");
}

std::string flavor_name(Flavor f) { return f == Flavor::Exact ? "exact" : "float"; }

json behavior_to_json(const ExactBehavior& b) { return behavior_json(b, Flavor::Exact); }
json behavior_to_json(const FloatBehavior& b) { return behavior_json(b, Flavor::Float); }
ExactBehavior exact_behavior_from_json(const Document& d) { return behavior_from<Rational>(d); }
FloatBehavior float_behavior_from_json(const Document& d) { return behavior_from<double>(d); }

json model_to_json(const ExactModel& m) { return model_json(m, Flavor::Exact); }
json model_to_json(const FloatModel& m) { return model_json(m, Flavor::Float); }
ExactModel exact_model_from_json(const Document& d) { return model_from<Rational>(d); }
FloatModel float_model_from_json(const Document& d) { return model_from<double>(d); }

json certificate_to_json(const LocalityCertificate& c) {
  return {{"kind", "certificate"}, {"xi", vector_to(c.xi)}, {"value", to_json(c.value)},
          {"tight_strategies", c.tight_strategies}};
}

LocalityCertificate certificate_from_json(const json& j) {
  LocalityCertificate c;
  c.xi = vector_from<Rational>(field(j, "xi", "certificate"), "certificate.xi");
  c.value = rational_from(field(j, "value", "certificate"), "certificate.value");
  if (j.contains("tight_strategies")) c.tight_strategies = j.at("tight_strategies").get<std::vector<std::size_t>>();
  return c;
}

json decomposition_to_json(const StrategyMatrix& s, const Decomposition& d) {
  json terms = json::array();
  for (std::size_t l = 0; l < d.weights.size(); ++l)
    if (sgn(d.weights[l]) != 0)
      terms.push_back({{"strategy", l}, {"responses", s.strategies[l]}, {"weight", to_json(d.weights[l])}});
  return {{"kind", "decomposition"}, {"terms", terms}};
}

json facets_to_json(const std::vector<Facet>& facets) {
  json out = json::array();
  for (const auto& f : facets)
    out.push_back({{"offset", to_json(f.offset)},
                   {"coeffs", vector_to(f.coeffs)},
                   {"xi", vector_to(f.xi)},
                   {"tight_strategies", f.tight_strategies}});
  return out;
}

json pattern_to_json(const SupportPattern& p) {
  json marks = json::array();
  for (const auto& party : p.marks) {
    std::string s;
    for (Mark m : party) s += m == Mark::Zero ? '0' : m == Mark::One ? '1' : '*';
    marks.push_back(s);
  }
  return {{"cards", p.cards}, {"marks", marks}, {"code", p.code()}, {"text", p.to_string()}};
}

SupportPattern pattern_from_json(const json& j) {
  Cards cards = field(j, "cards", "pattern").get<Cards>();
  SupportPattern p = SupportPattern::uniform(cards, Mark::Zero);
  const json& marks = field(j, "marks", "pattern");
  if (!marks.is_array() || marks.size() != 3) throw JsonError("pattern.marks: expected three strings");
  for (std::size_t q = 0; q < 3; ++q) {
    const std::string s = marks[q].get<std::string>();
    if (s.size() != p.marks[q].size()) throw JsonError("pattern.marks: wrong cell count");
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == '0') p.marks[q][k] = Mark::Zero;
      else if (s[k] == '1') p.marks[q][k] = Mark::One;
      else if (s[k] == '*') p.marks[q][k] = Mark::Interior;
      else throw JsonError("pattern.marks: use 0, 1 or *");
    }
  }
  return p;
}

json report_to_json(const CertificateReport& r) {
  json ids = json::array();
  for (const auto& i : r.identities)
    ids.push_back({{"group", i.group}, {"name", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", true}});
  json conic = json::array();
  for (const auto& c : r.conic) conic.push_back({{"term", c.label}, {"coefficient", to_json(c.coefficient)}});
  json squares = json::array();
  for (const auto& s : r.squares)
    squares.push_back({{"coefficient", to_json(s.coefficient)}, {"base", format_bar(s.base)}});
  return {{"kind", "sos-certificate"}, {"overline_reading", r.overline_reading}, {"identities", ids},
          {"branches", r.branches},    {"conic", conic},                         {"squares", squares},
          {"transcript", r.transcript}, {"bound", to_json(r.bound)}};
}

json quantum_table_to_json(const QuantumTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries)
    entries.push_back({{"monomial", monomial_name(e.a, e.b, e.c)},
                       {"value", e.value},
                       {"expected", e.expected},
                       {"pass", std::abs(e.value - e.expected) <= kFloatTolerance}});
  return {{"kind", "quantum-table"}, {"eta", t.eta}, {"max_error", t.max_error}, {"entries", entries}};
}

} // namespace netloc::io

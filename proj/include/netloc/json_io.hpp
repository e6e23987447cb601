#pragma once

// JSON formats for networks, behaviors, models and results. Exact numbers
// are written as "num/den" strings; readers also accept integers and decimal
// strings, and ignore keys they do not know.

#include "netloc/bellpoly.hpp"
#include "netloc/finitemodel.hpp"
#include "netloc/polysos.hpp"
#include "netloc/quantumcorr.hpp"
#include "netloc/trianglesearch.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

namespace netloc::io {

using nlohmann::json;

/// Malformed input; the message carries line and column when known.
class JsonError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json parse_text(const std::string& text, const std::string& origin = "<input>");
json read_file(const std::filesystem::path& path);

/// A document plus the directory that relative "network" paths resolve against.
struct Document {
  json value;
  std::filesystem::path base_dir;
};

Document load(const std::filesystem::path& path);

Rational rational_from(const json& j, const std::string& where);
double double_from(const json& j, const std::string& where);
json to_json(const Rational& q);

json network_to_json(const Network& n);
Network network_from_json(const json& j, const std::filesystem::path& base_dir = {});

Flavor flavor_from(const json& j); // "flavor" key, exact by default
std::string flavor_name(Flavor f);

json behavior_to_json(const ExactBehavior& b);
json behavior_to_json(const FloatBehavior& b);
ExactBehavior exact_behavior_from_json(const Document& d);
FloatBehavior float_behavior_from_json(const Document& d);

json model_to_json(const ExactModel& m);
json model_to_json(const FloatModel& m);
ExactModel exact_model_from_json(const Document& d);
FloatModel float_model_from_json(const Document& d);

json certificate_to_json(const LocalityCertificate& c);
LocalityCertificate certificate_from_json(const json& j);
json decomposition_to_json(const StrategyMatrix& s, const Decomposition& d);
json facets_to_json(const std::vector<Facet>& facets);

json pattern_to_json(const SupportPattern& p);
SupportPattern pattern_from_json(const json& j);

json report_to_json(const CertificateReport& r);
json quantum_table_to_json(const QuantumTable& t);

} // namespace netloc::io

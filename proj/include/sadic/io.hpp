#pragma once

#include <json.hpp>

#include "sadic/analysis.hpp"

namespace sadic {

using json = nlohmann::json;

json to_json(const Morphism& m);
Morphism morphism_from_json(const json& j);

json to_json(const DirectiveSequence& t);
DirectiveSequence directive_from_json(const json& j);

json to_json(const BratteliDiagram& d);
BratteliDiagram diagram_from_json(const json& j);

json to_json(const OrderedBratteliDiagram& b);
OrderedBratteliDiagram ordered_from_json(const json& j);

json to_json(const IntertwiningCertificate& c);
IntertwiningCertificate cert_from_json(const json& j);

json to_json(const RightSpecialReport& r);
json to_json(const SignalAudit& a);
json to_json(const SubexpSpec& s);
json to_json(const PkCheckResult& r);

std::string complexity_csv(const ComplexityTable& t);

// Two-row rendering of a pair window with an offset ruler.
std::string render_pair_window(const AsymptoticPairWindow& w);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace sadic

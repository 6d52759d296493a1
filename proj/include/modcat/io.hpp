#pragma once

// JSON model files and report serialisation.
//
// Model file:
//
//   {
//     "worlds": ["w0", "w1"],
//     "propositions": ["p"],
//     "valuation": {"p": ["w0"]},
//     "agents": {
//       "a": {"kind": "kripke", "pairs": [["w0", "w1"]]},
//       "b": {"kind": "topology", "opens": [[], ["w0"], ["w0", "w1"]]},
//       "c": {"kind": "neighbourhood", "nbhd": [["w0", ["w0"]]]},
//       "d": {"kind": "cabao", "table": [[[], []], [["w0"], ["w0"]], ...]}
//     },
//     "product_types": {
//       "E": {"events": ["e0", "e1"], "kind": "kripke", "pairs": [],
//             "agents": {"b": {"kind": "topology", "opens": [...]}},
//             "valuation": {"p": ["e0"]},
//             "preconditions": {"e0": "p", "e1": "true"}}
//     }
//   }
//
// A cabao table must list every subset exactly once. World lists are
// written in universe order.

#include <string>
#include <vector>

#include <json.hpp>

#include "modcat/axioms.hpp"
#include "modcat/functors.hpp"
#include "modcat/laws.hpp"

namespace modcat {

using json = nlohmann::json;

json object_to_json(const GeometricObject& a);
/// Reads "kind" and the matching payload; names resolve against `u`.
GeometricObject object_from_json(const json& j, const UniverseRef& u);

json model_to_json(const Model& m);
/// Throws Error on schema violations and on invalid agents.
Model model_from_json(const json& j);

Model load_model(const std::string& path);
void save_model(const Model& m, const std::string& path);

json truth_to_json(const Universe& u, const Subset& s);
json report_to_json(const PreservationReport& r);
json correspondence_to_json(const std::vector<CorrespondenceRow>& rows);
json laws_to_json(Kind kind, const std::vector<LawResult>& results);
json axioms_to_json(const std::vector<AxiomInstance>& instances, const Universe& u);

}  // namespace modcat

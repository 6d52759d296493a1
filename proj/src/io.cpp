#include "modcat/io.hpp"

#include <fstream>
#include <set>

namespace modcat {
namespace {

json names_of(const Universe& u, Mask s) {
  json out = json::array();
  for_each_bit(s, [&](std::size_t i) { out.push_back(u.name(i)); });
  return out;
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

std::string as_name(const json& j, const std::string& where) {
  if (!j.is_string()) throw Error(where + ": expected a world name, got " + j.dump());
  return j.get<std::string>();
}

std::size_t world(const json& j, const Universe& u, const std::string& where) {
  const auto name = as_name(j, where);
  const auto i = u.find(name);
  if (!i) throw Error(where + ": unknown world \"" + name + "\"");
  return *i;
}

Mask world_set(const json& j, const Universe& u, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected a list of worlds");
  Mask out = 0;
  for (const auto& w : j) out |= Mask{1} << world(w, u, where);
  return out;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": expected a list of names");
  std::vector<std::string> out;
  for (const auto& s : j) out.push_back(as_name(s, where));
  return out;
}

std::map<std::string, Mask> truth_from_json(const json& j, const Universe& u, const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected an object");
  std::map<std::string, Mask> out;
  for (const auto& [p, ws] : j.items()) out[p] = world_set(ws, u, where + "." + p);
  return out;
}

json truth_map(const std::map<std::string, Mask>& truth, const Universe& u) {
  json out = json::object();
  for (const auto& [p, s] : truth) out[p] = names_of(u, s);
  return out;
}

void put_payload(json& out, const GeometricObject& a) {
  const auto& u = *a.universe();
  out["kind"] = std::string(to_string(a.kind()));
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      json pairs = json::array();
      for (std::size_t x = 0; x < a.size(); ++x) {
        for_each_bit(a.rows()[x], [&](std::size_t y) { pairs.push_back(json::array({u.name(x), u.name(y)})); });
      }
      out["pairs"] = std::move(pairs);
      break;
    }
    case Kind::Topology: {
      json opens = json::array();
      for (auto o : a.opens()) opens.push_back(names_of(u, o));
      out["opens"] = std::move(opens);
      break;
    }
    case Kind::Neighbourhood: {
      json nbhd = json::array();
      for (std::size_t x = 0; x < a.size(); ++x) {
        for (Mask s = 0; s < a.table().size(); ++s) {
          if ((a.table()[s] >> x) & 1U) nbhd.push_back(json::array({u.name(x), names_of(u, s)}));
        }
      }
      out["nbhd"] = std::move(nbhd);
      break;
    }
    case Kind::Cabao: {
      json table = json::array();
      for (Mask s = 0; s < a.table().size(); ++s) table.push_back(json::array({names_of(u, s), names_of(u, a.table()[s])}));
      out["table"] = std::move(table);
      break;
    }
    case Kind::Valuation:
      out["truth"] = truth_map(a.truth(), u);
      break;
  }
}

std::size_t checked_table_size(const Universe& u, const std::string& where) {
  if (u.size() > kMaxTableUniverse) {
    throw Error(where + ": operator tables need at most " + std::to_string(kMaxTableUniverse) + " worlds");
  }
  return std::size_t{1} << u.size();
}

GeometricObject read_object(const json& j, const UniverseRef& u, const std::string& where) {
  const auto& kind_field = field(j, "kind", where);
  if (!kind_field.is_string()) throw Error(where + ": \"kind\" must be a string");
  const auto kind = kind_from_string(kind_field.get<std::string>());
  if (!kind || *kind == Kind::Valuation) throw Error(where + ": unknown kind " + kind_field.dump());
  switch (*kind) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      std::vector<Mask> rows(u->size(), 0);
      const auto& pairs = field(j, "pairs", where);
      if (!pairs.is_array()) throw Error(where + ": \"pairs\" must be a list");
      for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) throw Error(where + ": each pair must be [world, world]");
        rows[world(p[0], *u, where)] |= Mask{1} << world(p[1], *u, where);
      }
      return GeometricObject::relation(*kind, u, std::move(rows));
    }
    case Kind::Topology: {
      std::vector<Mask> opens;
      const auto& list = field(j, "opens", where);
      if (!list.is_array()) throw Error(where + ": \"opens\" must be a list");
      for (const auto& o : list) opens.push_back(world_set(o, *u, where + ".opens"));
      return GeometricObject::topology(u, std::move(opens));
    }
    case Kind::Neighbourhood: {
      std::vector<Mask> table(checked_table_size(*u, where), 0);
      const auto& list = field(j, "nbhd", where);
      if (!list.is_array()) throw Error(where + ": \"nbhd\" must be a list");
      for (const auto& e : list) {
        if (!e.is_array() || e.size() != 2) throw Error(where + ": each nbhd entry must be [world, [worlds]]");
        table[world_set(e[1], *u, where + ".nbhd")] |= Mask{1} << world(e[0], *u, where);
      }
      return GeometricObject::neighbourhood(u, std::move(table));
    }
    case Kind::Cabao: {
      const std::size_t size = checked_table_size(*u, where);
      std::vector<Mask> table(size, 0);
      std::vector<bool> seen(size, false);
      const auto& list = field(j, "table", where);
      if (!list.is_array()) throw Error(where + ": \"table\" must be a list");
      for (const auto& e : list) {
        if (!e.is_array() || e.size() != 2) throw Error(where + ": each table entry must be [[worlds], [worlds]]");
        const Mask s = world_set(e[0], *u, where + ".table");
        if (seen[s]) throw Error(where + ": table lists " + describe_subset(*u, s) + " twice");
        seen[s] = true;
        table[s] = world_set(e[1], *u, where + ".table");
      }
      for (Mask s = 0; s < size; ++s) {
        if (!seen[s]) throw Error(where + ": table has no entry for " + describe_subset(*u, s));
      }
      return GeometricObject::cabao(u, std::move(table));
    }
    case Kind::Valuation:
      break;
  }
  throw Error(where + ": unsupported kind");
}

}  // namespace

json object_to_json(const GeometricObject& a) {
  json out = json::object();
  put_payload(out, a);
  return out;
}

GeometricObject object_from_json(const json& j, const UniverseRef& u) {
  auto a = read_object(j, u, "object");
  require_valid(a);
  return a;
}

json model_to_json(const Model& m) {
  const auto& u = *m.universe();
  json out = json::object();
  out["worlds"] = u.names();
  out["propositions"] = m.propositions();
  out["valuation"] = truth_map(m.valuation().truth(), u);
  json agents = json::object();
  for (const auto& [name, a] : m.agents()) agents[name] = object_to_json(a);
  out["agents"] = std::move(agents);
  if (!m.product_types().empty()) {
    json types = json::object();
    for (const auto& [name, t] : m.product_types()) {
      json jt = json::object();
      jt["events"] = t.events->names();
      if (t.geometry) put_payload(jt, *t.geometry);
      if (!t.agent_geometry.empty()) {
        json per = json::object();
        for (const auto& [agent, g] : t.agent_geometry) per[agent] = object_to_json(g);
        jt["agents"] = std::move(per);
      }
      jt["valuation"] = truth_map(t.valuation, *t.events);
      json pre = json::object();
      for (std::size_t e = 0; e < t.events->size(); ++e) pre[t.events->name(e)] = print(*t.preconditions[e]);
      jt["preconditions"] = std::move(pre);
      types[name] = std::move(jt);
    }
    out["product_types"] = std::move(types);
  }
  return out;
}

Model model_from_json(const json& j) {
  if (!j.is_object()) throw Error("model: expected a JSON object");
  const auto u = Universe::make(string_list(field(j, "worlds", "model"), "worlds"));

  std::map<std::string, Mask> truth;
  if (j.contains("propositions")) {
    for (const auto& p : string_list(j.at("propositions"), "propositions")) truth[p] = 0;
  }
  if (j.contains("valuation")) {
    for (const auto& [p, s] : truth_from_json(j.at("valuation"), *u, "valuation")) {
      if (j.contains("propositions") && !truth.count(p)) {
        throw Error("valuation: \"" + p + "\" is not listed in \"propositions\"");
      }
      truth[p] = s;
    }
  }

  std::map<std::string, GeometricObject> agents;
  const auto& ja = field(j, "agents", "model");
  if (!ja.is_object()) throw Error("agents: expected an object");
  for (const auto& [name, spec] : ja.items()) agents.emplace(name, read_object(spec, u, "agents." + name));

  std::map<std::string, ProductType> types;
  if (j.contains("product_types")) {
    const auto& jt = j.at("product_types");
    if (!jt.is_object()) throw Error("product_types: expected an object");
    for (const auto& [name, spec] : jt.items()) {
      const std::string where = "product_types." + name;
      ProductType t;
      t.events = Universe::make(string_list(field(spec, "events", where), where + ".events"));
      if (spec.contains("kind")) t.geometry = read_object(spec, t.events, where);
      if (spec.contains("agents")) {
        if (!spec.at("agents").is_object()) throw Error(where + ".agents: expected an object");
        for (const auto& [agent, g] : spec.at("agents").items()) {
          t.agent_geometry.emplace(agent, read_object(g, t.events, where + ".agents." + agent));
        }
      }
      if (spec.contains("valuation")) t.valuation = truth_from_json(spec.at("valuation"), *t.events, where + ".valuation");
      const auto& pre = field(spec, "preconditions", where);
      if (!pre.is_object()) throw Error(where + ".preconditions: expected an object");
      std::set<std::string> listed;
      for (const auto& [e, _] : pre.items()) {
        if (!t.events->find(e)) throw Error(where + ".preconditions: unknown event \"" + e + "\"");
        listed.insert(e);
      }
      for (const auto& e : t.events->names()) {
        if (!listed.count(e)) throw Error(where + ".preconditions: no precondition for event \"" + e + "\"");
        const auto& text = pre.at(e);
        if (!text.is_string()) throw Error(where + ".preconditions." + e + ": expected formula text");
        try {
          t.preconditions.push_back(parse(text.get<std::string>()));
        } catch (const ParseError& err) {
          throw Error(where + ".preconditions." + e + ": " + err.what());
        }
      }
      types.emplace(name, std::move(t));
    }
  }
  return Model(u, std::move(agents), GeometricObject::valuation(u, std::move(truth)), std::move(types));
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  return model_from_json(j);
}

void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << model_to_json(m).dump(2) << "\n";
}

json truth_to_json(const Universe& u, const Subset& s) { return names_of(u, s.bits()); }

json report_to_json(const PreservationReport& r) {
  json out = json::object();
  out["functor"] = r.functor;
  out["property"] = std::string(to_string(r.property));
  if (r.fragment) out["fragment"] = std::string(to_string(*r.fragment));
  out["preserved"] = r.preserved;
  out["checked"] = r.checked;
  if (!r.objects.empty()) out["objects"] = r.objects;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    out["counterexample"] = {
        {"formula", c.formula},
        {"witness", c.witness},
        {"source_model", model_to_json(c.source_model)},
        {"target_model", model_to_json(c.target_model)},
        {"source_truth", truth_to_json(*c.source_model.universe(), c.source_truth)},
        {"target_truth", truth_to_json(*c.target_model.universe(), c.target_truth)},
    };
  }
  return out;
}

json correspondence_to_json(const std::vector<CorrespondenceRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = {{"functor", r.functor},
                {"fragment", std::string(to_string(r.fragment))},
                {"structural", r.structural},
                {"language", r.language},
                {"agrees", r.agrees()}};
    if (r.formula) row["formula"] = *r.formula;
    out.push_back(std::move(row));
  }
  return out;
}

json laws_to_json(Kind kind, const std::vector<LawResult>& results) {
  json laws = json::array();
  bool passed = true;
  for (const auto& r : results) {
    passed = passed && r.passed;
    json l = {{"law", r.law}, {"passed", r.passed}, {"checks", r.checks}};
    if (!r.passed) l["detail"] = r.detail;
    laws.push_back(std::move(l));
  }
  return {{"kind", std::string(to_string(kind))}, {"passed", passed}, {"laws", std::move(laws)}};
}

json axioms_to_json(const std::vector<AxiomInstance>& instances, const Universe& u) {
  json out = json::array();
  for (const auto& a : instances) {
    out.push_back({{"axiom", std::string(to_string(a.axiom))},
                   {"mode", a.mode == GroupMode::Distributive ? "D" : "C"},
                   {"formula", print(*a.formula)},
                   {"valid", a.valid()},
                   {"counter_worlds", truth_to_json(u, a.counter_worlds)}});
  }
  return out;
}

}  // namespace modcat

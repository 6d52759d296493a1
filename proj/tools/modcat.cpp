// modcat: evaluate, update and transform models; check functors and laws.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "modcat/io.hpp"

using namespace modcat;

namespace {

constexpr int kInvalidInput = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

// Rejects formulas that use both D and C groups of two or more agents.
void check_single_mode(const Formula& f) {
  bool d = false, c = false;
  auto note = [&](const GroupTerm& g) {
    if (g.is_singleton()) return;
    (g.mode() == GroupMode::Distributive ? d : c) = true;
  };
  visit(f, [&](const Formula& sub) {
    if (auto m = sub.as<node::Modal>()) note(m->group);
    if (auto k = sub.as<node::Dep>()) {
      note(k->g);
      note(k->h);
    }
  });
  if (d && c) throw Error("--strict-fragment: formula mixes D{...} and C{...} groups");
}

int cmd_eval(const std::string& model_path, const std::string& text, const std::string& format, bool strict) {
  const auto m = load_model(model_path);
  const auto phi = parse(text);
  if (strict) check_single_mode(*phi);
  const auto truth = eval(m, phi);
  const auto& u = *m.universe();
  if (format == "json") {
    json worlds = json::object();
    for (std::size_t x = 0; x < u.size(); ++x) worlds[u.name(x)] = truth.contains(x);
    std::cout << json{{"formula", print(*phi)}, {"truth", truth_to_json(u, truth)}, {"worlds", worlds}}.dump(2)
              << "\n";
    return 0;
  }
  std::cout << "formula: " << print(*phi) << "\n";
  std::cout << "truth set: " << describe_subset(u, truth.bits()) << "\n";
  for (std::size_t x = 0; x < u.size(); ++x) std::cout << "  " << u.name(x) << "\t" << (truth.contains(x) ? 1 : 0) << "\n";
  return 0;
}

int cmd_valid(const std::string& model_path, const std::string& text) {
  const auto m = load_model(model_path);
  const auto truth = eval(m, parse(text));
  if (truth.is_full()) {
    std::cout << "valid\n";
    return 0;
  }
  std::cout << "counter-worlds: " << describe_subset(*m.universe(), truth.complement().bits()) << "\n";
  return 1;
}

int cmd_update(const std::string& model_path, const std::string& announce_text, const std::string& type,
               const std::string& events, const std::string& out) {
  const auto m = load_model(model_path);
  if (!announce_text.empty()) {
    save_model(announce(m, *parse(announce_text)), out);
    return 0;
  }
  const auto& t = m.product_type(type);
  const auto update = apply_product(m, t);
  const Mask chosen = event_mask(t, split(events, ','));
  const auto keep = preimage(update.sum.to_events, Subset(t.events->size(), chosen));
  save_model(restrict(update.model, keep), out);
  return 0;
}

int cmd_transform(const std::string& model_path, const std::string& functor, const std::string& agent,
                  const std::string& out) {
  const auto m = load_model(model_path);
  const auto& f = find_functor(functor);
  if (agent.empty()) {
    bool any = false;
    for (const auto& [_, a] : m.agents()) any = any || a.kind() == f.source;
    if (!any) throw Error("no agent of kind " + std::string(to_string(f.source)) + " in " + model_path);
  }
  const auto result = agent.empty() ? transform(f, m) : transform(f, m, agent);
  save_model(result, out);
  return 0;
}

int cmd_check(const std::string& functor, const std::string& property, const std::string& fragment, std::size_t depth,
              std::size_t trials, std::uint64_t seed, std::size_t max_worlds, const std::string& format) {
  const auto& f = find_functor(functor);
  const auto p = property_from_string(property);
  if (!p) throw Error("unknown property '" + property + "'");
  CheckOptions options;
  options.trials = trials;
  options.seed = seed;
  options.max_worlds = max_worlds;
  options.depth = depth;
  if (!fragment.empty()) {
    if (*p != Property::Language) throw Error("--fragment applies to --property language only");
    const auto fr = fragment_from_string(fragment);
    if (!fr) throw Error("unknown fragment '" + fragment + "'");
    options.fragment = *fr;
  }
  const auto report = check_preservation(f, *p, options);
  if (format == "json") {
    std::cout << report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << "functor: " << report.functor << "\n";
    std::cout << "property: " << to_string(report.property);
    if (report.fragment) std::cout << " (" << to_string(*report.fragment) << ", depth " << depth << ")";
    std::cout << "\nverdict: " << (report.preserved ? "preserved" : "counterexample") << "\n";
    std::cout << "checked: " << report.checked << "\n";
    for (const auto& o : report.objects) std::cout << "  " << o << "\n";
    if (report.counterexample) {
      const auto& c = *report.counterexample;
      std::cout << "formula: " << c.formula << "\n";
      std::cout << "found by: " << c.witness << "\n";
      std::cout << "source truth: " << describe_subset(*c.source_model.universe(), c.source_truth.bits()) << "\n";
      std::cout << "target truth: " << describe_subset(*c.target_model.universe(), c.target_truth.bits()) << "\n";
    }
  }
  return report.preserved ? 0 : 1;
}

int cmd_laws(const std::string& kind_name, std::size_t trials, std::uint64_t seed, const std::string& format) {
  const auto kind = kind_from_string(kind_name);
  if (!kind) throw Error("unknown kind '" + kind_name + "'");
  const auto results = gating_suite(*kind, trials, seed);
  const auto j = laws_to_json(*kind, results);
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "ok   " : "FAIL ") << r.law << " (" << r.checks << " checks)";
      if (!r.passed) std::cout << ": " << r.detail;
      std::cout << "\n";
    }
  }
  return j.at("passed").get<bool>() ? 0 : 1;
}

int cmd_axioms(const std::string& model_path, const std::vector<std::string>& parts, const std::string& mode,
               const std::string& format) {
  const auto m = load_model(model_path);
  std::vector<std::vector<std::string>> sets;
  for (const auto& p : parts) {
    auto names = split(p, ',');
    for (const auto& n : names) m.agent(n);
    sets.push_back(std::move(names));
  }
  std::vector<FormulaPtr> bodies;
  for (const auto& p : m.propositions()) bodies.push_back(prop(p));
  if (bodies.empty()) bodies.push_back(top_formula());

  std::vector<AxiomInstance> all;
  for (auto gm : {GroupMode::Distributive, GroupMode::Common}) {
    if (mode == "D" && gm != GroupMode::Distributive) continue;
    if (mode == "C" && gm != GroupMode::Common) continue;
    auto part = axiom_instances(m, gm, sets[0], sets[1], sets[2], bodies);
    all.insert(all.end(), part.begin(), part.end());
  }
  bool ok = true;
  for (const auto& a : all) ok = ok && a.valid();
  if (format == "json") {
    std::cout << axioms_to_json(all, *m.universe()).dump(2) << "\n";
  } else {
    for (const auto& a : all) {
      std::cout << (a.valid() ? "ok   " : "FAIL ") << (a.mode == GroupMode::Distributive ? "D " : "C ")
                << to_string(a.axiom) << "  " << print(*a.formula);
      if (!a.valid()) std::cout << "  fails at " << describe_subset(*m.universe(), a.counter_worlds.bits());
      std::cout << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modal logic over concrete categories of geometric objects"};
  app.require_subcommand(1);

  std::string model, formula, format = "text", out, announce_text, product, events, functor, agent;
  std::string property, fragment, kind, mode = "both";
  std::vector<std::string> groups;
  bool strict = false, all = false;
  std::size_t trials = 200, max_worlds = 3, depth = 3;
  std::uint64_t seed = 0;

  auto* eval_cmd = app.add_subcommand("eval", "Truth set of a formula");
  eval_cmd->add_option("--model", model)->required();
  eval_cmd->add_option("--formula", formula)->required();
  eval_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  eval_cmd->add_flag("--strict-fragment", strict, "Reject formulas mixing D and C groups");

  auto* valid_cmd = app.add_subcommand("valid", "Exit 0 iff the formula holds everywhere");
  valid_cmd->add_option("--model", model)->required();
  valid_cmd->add_option("--formula", formula)->required();

  auto* update_cmd = app.add_subcommand("update", "Write the announced or product-updated model");
  update_cmd->add_option("--model", model)->required();
  auto* ann = update_cmd->add_option("--announce", announce_text);
  auto* prod = update_cmd->add_option("--product", product);
  auto* evs = update_cmd->add_option("--events", events, "Comma-separated event names");
  update_cmd->add_option("--out", out)->required();
  ann->excludes(prod);
  prod->needs(evs);
  evs->needs(prod);

  auto* transform_cmd = app.add_subcommand("transform", "Apply a built-in functor to a model's agents");
  transform_cmd->add_option("--model", model)->required();
  transform_cmd->add_option("--functor", functor)->required();
  auto* agent_opt = transform_cmd->add_option("--agent", agent);
  transform_cmd->add_flag("--all", all)->excludes(agent_opt);
  transform_cmd->add_option("--out", out)->required();

  auto* check_cmd = app.add_subcommand("check-functor", "Check a structural or language-preservation property");
  check_cmd->add_option("--functor", functor)->required();
  check_cmd->add_option("--property", property)->required();
  check_cmd->add_option("--fragment", fragment);
  check_cmd->add_option("--depth", depth);
  check_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", seed);
  check_cmd->add_option("--max-worlds", max_worlds)->check(CLI::Range(0, 4));
  check_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* laws_cmd = app.add_subcommand("laws", "Run the gating suite for one kind");
  laws_cmd->add_option("--kind", kind)->required();
  laws_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  laws_cmd->add_option("--seed", seed);
  laws_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* axioms_cmd = app.add_subcommand("axioms", "Check the dependence axioms for groups G, H, P");
  axioms_cmd->add_option("--model", model)->required();
  axioms_cmd->add_option("--groups", groups, "Agent lists G H P, each comma-separated")->required()->expected(3);
  axioms_cmd->add_option("--mode", mode)->check(CLI::IsMember({"D", "C", "both"}));
  axioms_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (*eval_cmd) return cmd_eval(model, formula, format, strict);
    if (*valid_cmd) return cmd_valid(model, formula);
    if (*update_cmd) {
      if (announce_text.empty() && product.empty()) throw Error("update needs --announce or --product");
      return cmd_update(model, announce_text, product, events, out);
    }
    if (*transform_cmd) return cmd_transform(model, functor, agent, out);
    if (*check_cmd) return cmd_check(functor, property, fragment, depth, trials, seed, max_worlds, format);
    if (*laws_cmd) return cmd_laws(kind, trials, seed, format);
    if (*axioms_cmd) return cmd_axioms(model, groups, mode, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

// Acceptance gate: one PASS/FAIL line per criterion, each with a pinned
// time budget. Exit status is the number of failing criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "modcat/axioms.hpp"
#include "modcat/functors.hpp"
#include "modcat/laws.hpp"
#include "modcat/oracle.hpp"

using namespace modcat;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(std::string note) {
    pass = false;
    notes.push_back(std::move(note));
  }
  void note(std::string n) { notes.push_back(std::move(n)); }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) out.fail("over budget");
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (out.pass ? "PASS" : "FAIL") << " " << id << " " << title << " (" << secs << " s, budget " << budget_s
       << " s)";
  std::cout << line.str() << "\n";
  for (const auto& n : out.notes) std::cout << "     " << n << "\n";
  std::cout.flush();
  failures += out.pass ? 0 : 1;
}

void absorb(Outcome& out, Kind kind, const std::vector<LawResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) out.fail(std::string(to_string(kind)) + ": " + r.law + ": " + r.detail);
  }
}

std::vector<std::vector<std::string>> nonempty_subsets(const std::vector<std::string>& agents) {
  std::vector<std::vector<std::string>> out;
  for (Mask s = 1; s < (Mask{1} << agents.size()); ++s) {
    std::vector<std::string> g;
    for_each_bit(s, [&](std::size_t i) { g.push_back(agents[i]); });
    out.push_back(std::move(g));
  }
  return out;
}

Model random_kripke_model(Rng& rng, std::size_t product_types = 0) {
  ModelShape shape;
  shape.agent_kinds.assign(1 + rng.below(2), Kind::Kripke);
  shape.worlds = 1 + rng.below(4);
  shape.product_types = product_types;
  shape.max_events = 3;
  return random_model(shape, rng);
}

FormulaPtr random_static(const Model& m, Rng& rng, std::size_t depth = 2) {
  return random_formula(signature_of(m), Fragment::Basic, {depth}, rng);
}

std::vector<std::string> event_names(const ProductType& t, Mask events) {
  std::vector<std::string> out;
  for_each_bit(events, [&](std::size_t e) { out.push_back(t.events->name(e)); });
  return out;
}

// 1 ------------------------------------------------------------------------
Outcome lattice_gate() {
  Outcome out;
  for (auto kind : kAllKinds) {
    absorb(out, kind, lattice_laws(kind, exhaustive_size(kind)));
    absorb(out, kind, exhaustive_fibration_laws(kind, exhaustive_size(kind)));
  }
  return out;
}

// 2 ------------------------------------------------------------------------
Outcome oracle_gate() {
  Outcome out;
  for (auto kind : kAllKinds) absorb(out, kind, oracle_laws(kind, 500, 2));
  return out;
}

// 3 ------------------------------------------------------------------------
Outcome axiom_suite() {
  Outcome out;
  const std::vector<std::string> agents = {"a", "b", "c"};
  const auto groups = nonempty_subsets(agents);
  std::map<std::string, std::size_t> violations;
  std::map<std::string, std::string> first;
  std::size_t instances = 0;
  for (auto kind : kModalKinds) {
    Rng rng = Rng(3).derive(static_cast<std::uint64_t>(kind));
    for (int i = 0; i < 200; ++i) {
      ModelShape shape;
      shape.agent_kinds.assign(3, kind);
      shape.worlds = 1 + rng.below(3);
      const auto m = random_model(shape, rng);
      const std::vector<FormulaPtr> bodies = {prop("p"), prop("q"), random_static(m, rng)};
      for (int trial = 0; trial < 4; ++trial) {
        const auto& g = groups[rng.below(groups.size())];
        const auto& h = groups[rng.below(groups.size())];
        const auto& p = groups[rng.below(groups.size())];
        for (auto mode : {GroupMode::Distributive, GroupMode::Common}) {
          for (const auto& inst : axiom_instances(m, mode, g, h, p, bodies)) {
            ++instances;
            if (inst.valid()) continue;
            const std::string key = std::string(mode == GroupMode::Distributive ? "D " : "C ") +
                                    std::string(to_string(inst.axiom)) + " in " + std::string(to_string(kind));
            if (violations[key]++ == 0) {
              std::ostringstream w;
              w << print(*inst.formula) << " fails at " << describe_subset(*m.universe(), inst.counter_worlds.bits());
              for (const auto& [name, a] : m.agents()) w << "; " << name << " = " << describe(a);
              first[key] = w.str();
            }
          }
        }
      }
    }
  }
  out.note(std::to_string(instances) + " instances over 1200 models");
  for (const auto& [key, count] : violations) out.fail(key + ": " + std::to_string(count) + " violations, e.g. " + first[key]);
  return out;
}

// 4 ------------------------------------------------------------------------
Outcome correspondence_suite() {
  Outcome out;
  CheckOptions options;
  options.trials = 200;
  options.seed = 4;
  options.max_worlds = 3;
  options.depth = 3;
  const std::set<std::string> known_negative = {"refl_trans_closure", "eqv_closure", "largest_contained_eqv",
                                                "specialization"};
  bool product_witness = false;
  std::size_t rows = 0;
  for (const auto& f : builtin_functors()) {
    bool any_formula = false;
    for (const auto& row : correspondence(f, options)) {
      ++rows;
      if (!row.agrees()) {
        out.fail(f.name + " / " + std::string(to_string(row.fragment)) + ": structural " +
                 (row.structural ? "yes" : "no") + ", language " + (row.language ? "yes" : "no"));
      }
      if (row.formula) {
        any_formula = true;
        if (row.fragment == Fragment::Product && row.formula->rfind("<E,", 0) == 0) product_witness = true;
      }
    }
    if (known_negative.count(f.name) && !any_formula) {
      out.fail(f.name + ": no counterexample formula exists at this scale (structural verdict: modal, " +
               "meets, joins, pullbacks all preserved)");
    }
  }
  if (!product_witness) out.fail("no product-type witness among the counterexamples");
  out.note(std::to_string(rows) + " functor/fragment pairings compared");
  return out;
}

// 5 ------------------------------------------------------------------------
Outcome classical_equivalence() {
  Outcome out;
  Rng rng(5);
  std::size_t pal_bad = 0, del_bad = 0;
  for (int i = 0; i < 300; ++i) {
    const auto m = random_kripke_model(rng);
    const auto phi = random_static(m, rng), psi = random_static(m, rng);
    if (eval(m, announce_box(phi, psi)) != classical_pal_oracle(m, *phi, *psi)) ++pal_bad;
  }
  for (int i = 0; i < 300; ++i) {
    const auto m = random_kripke_model(rng, 1);
    const auto& [name, type] = *m.product_types().begin();
    const Mask events = rng.mask(type.events->size());
    const auto psi = random_static(m, rng);
    const bool box = rng.chance(1, 2);
    const auto f = box ? product_box(name, event_names(type, events), psi)
                       : product_diamond(name, event_names(type, events), psi);
    if (eval(m, f) != classical_del_oracle(m, type, events, *psi, box)) ++del_bad;
  }
  if (pal_bad) out.fail(std::to_string(pal_bad) + " of 300 announcement instances differ");
  if (del_bad) out.fail(std::to_string(del_bad) + " of 300 product-update instances differ");
  return out;
}

// 6 ------------------------------------------------------------------------
Outcome announcement_as_product() {
  Outcome out;
  Rng rng(6);
  std::size_t bad = 0;
  for (int i = 0; i < 200; ++i) {
    ModelShape shape;
    const std::size_t agents = 1 + rng.below(2);
    for (std::size_t a = 0; a < agents; ++a) shape.agent_kinds.push_back(kModalKinds[(i + a) % 6]);
    shape.worlds = 1 + rng.below(3);
    const auto m0 = random_model(shape, rng);
    const auto phi = random_static(m0, rng), psi = random_static(m0, rng);
    const auto m = m0.with_product_type("A", announcement_type(phi, m0.agent_kinds()));
    if (eval(m, announce_box(phi, psi)) != eval(m, product_box("A", {"*"}, psi))) ++bad;
    if (eval(m, announce_diamond(phi, psi)) != eval(m, product_diamond("A", {"*"}, psi))) ++bad;
  }
  if (bad) out.fail(std::to_string(bad) + " of 400 comparisons differ");
  return out;
}

// 7 ------------------------------------------------------------------------
Outcome duality_and_round_trips() {
  Outcome out;
  Rng rng(7);
  std::size_t dual_bad = 0;
  for (int i = 0; i < 200; ++i) {
    ModelShape shape;
    shape.agent_kinds = {kModalKinds[i % 6]};
    shape.worlds = 1 + rng.below(3);
    shape.product_types = 1;
    const auto m = random_model(shape, rng);
    const auto phi = random_static(m, rng), psi = random_static(m, rng);
    if (eval(m, announce_diamond(phi, psi)) != eval(m, negation(announce_box(phi, negation(psi))))) ++dual_bad;
    const auto& [name, type] = *m.product_types().begin();
    const auto events = event_names(type, rng.mask(type.events->size()));
    if (eval(m, product_diamond(name, events, psi)) != eval(m, negation(product_box(name, events, negation(psi))))) {
      ++dual_bad;
    }
  }
  if (dual_bad) out.fail(std::to_string(dual_bad) + " duality instances differ");

  const auto& to = find_functor("nb_to_cabao");
  const auto& from = find_functor("cabao_to_nb");
  std::size_t nb_bad = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto u = Universe::range(n);
    std::vector<GeometricObject> nbs, ops;
    if (n <= 2) {
      nbs = all_objects(Kind::Neighbourhood, u);
      ops = all_objects(Kind::Cabao, u);
    } else {
      for (int i = 0; i < 1000; ++i) {
        nbs.push_back(random_object(Kind::Neighbourhood, u, rng));
        ops.push_back(random_object(Kind::Cabao, u, rng));
      }
    }
    for (const auto& a : nbs) nb_bad += !(apply(from, apply(to, a)) == a);
    for (const auto& a : ops) nb_bad += !(apply(to, apply(from, a)) == a);
  }
  if (nb_bad) out.fail(std::to_string(nb_bad) + " neighbourhood/cabao round trips differ");

  const auto& alex = find_functor("alexandroff");
  const auto& spec = find_functor("specialization");
  std::size_t pre_bad = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& p : all_objects(Kind::Preorder, Universe::range(n))) pre_bad += !(apply(spec, apply(alex, p)) == p);
  }
  if (pre_bad) out.fail(std::to_string(pre_bad) + " preorders not recovered");

  Signature sig;
  sig.agents = {"a", "b", "c"};
  sig.props = {"p", "q", "r"};
  sig.updates = {{"E", {"e0"}}, {"E", {"e0", "e1"}}};
  const Fragment fragments[] = {Fragment::Basic,      Fragment::Dependence,   Fragment::GroupsMeet,
                                Fragment::GroupsJoin, Fragment::Announcement, Fragment::Product};
  std::size_t parse_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto f = random_formula(sig, fragments[i % 6], {4}, rng);
    if (!equal(parse(print(*f)), f)) ++parse_bad;
  }
  if (parse_bad) out.fail(std::to_string(parse_bad) + " of 10000 formulas do not round trip");
  return out;
}

// 8 ------------------------------------------------------------------------
Outcome chain_containment() {
  Outcome out;
  Rng rng(8);
  const Kind kinds[] = {Kind::Preorder, Kind::Equivalence, Kind::Topology};
  std::size_t chains = 0, bad = 0;
  for (int i = 0; i < 100; ++i) {
    ModelShape shape;
    shape.agent_kinds.assign(2 + rng.below(2), kinds[i % 3]);
    shape.worlds = 1 + rng.below(4);
    const auto m = random_model(shape, rng);
    std::vector<std::string> names;
    for (const auto& [name, a] : m.agents()) {
      names.push_back(name);
      const auto op = semantic_functor(a);
      if (!is_monotone(op) || !is_idempotent(op)) out.fail(name + " is not monotone and idempotent");
    }
    for (const auto& g : nonempty_subsets(names)) {
      if (g.size() < 2) continue;
      const auto common = semantic_functor(group_object(m, GroupTerm(GroupMode::Common, g)));
      // Every member sequence of length 1..3.
      std::vector<std::vector<std::size_t>> seqs = {{}};
      for (std::size_t len = 1; len <= 3; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : seqs) {
          if (s.size() != len - 1) continue;
          for (std::size_t k = 0; k < g.size(); ++k) {
            auto t = s;
            t.push_back(k);
            next.push_back(t);
          }
        }
        seqs.insert(seqs.end(), next.begin(), next.end());
      }
      for (const auto& s : seqs) {
        if (s.empty()) continue;
        auto chain = semantic_functor(m.agent(g[s[0]]));
        for (std::size_t j = 1; j < s.size(); ++j) chain = compose(chain, semantic_functor(m.agent(g[s[j]])));
        ++chains;
        if (!pointwise_leq(common, chain)) ++bad;
      }
    }
  }
  if (bad) out.fail(std::to_string(bad) + " of " + std::to_string(chains) + " chains not contained");
  out.note(std::to_string(chains) + " chains checked");
  return out;
}

}  // namespace

int main() {
  criterion(1, "lattice and fibration gate", 30, lattice_gate);
  criterion(2, "initial-lift and adjunction oracles", 60, oracle_gate);
  criterion(3, "dependence axioms under both group readings", 60, axiom_suite);
  criterion(4, "structural and language verdicts agree", 300, correspondence_suite);
  criterion(5, "agreement with classical announcement and product update", 60, classical_equivalence);
  criterion(6, "announcement equals the singleton product type", 60, announcement_as_product);
  criterion(7, "duality and round trips", 60, duality_and_round_trips);
  criterion(8, "common-knowledge operator below member chains", 60, chain_containment);
  return failures;
}

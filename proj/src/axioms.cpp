#include "modcat/axioms.hpp"

#include <algorithm>
#include <set>

namespace modcat {

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::Inclusion: return "inclusion";
    case Axiom::Additivity: return "additivity";
    case Axiom::Transitivity: return "transitivity";
    case Axiom::Transfer: return "transfer";
  }
  return "?";
}

std::vector<AxiomInstance> axiom_instances(const Model& m, GroupMode mode, const std::vector<std::string>& g,
                                           const std::vector<std::string>& h, const std::vector<std::string>& p,
                                           const std::vector<FormulaPtr>& bodies) {
  auto term = [mode](std::vector<std::string> members) { return GroupTerm(mode, std::move(members)); };
  auto sorted = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto gs = sorted(g), hs = sorted(h), ps = sorted(p);
  std::vector<std::string> hp;
  std::set_union(hs.begin(), hs.end(), ps.begin(), ps.end(), std::back_inserter(hp));
  const bool meet_mode = mode == GroupMode::Distributive;

  std::vector<AxiomInstance> out;
  auto add = [&](Axiom a, FormulaPtr f) {
    auto truth = eval(m, f);
    out.push_back({a, mode, f, truth.complement()});
  };

  const std::set<std::vector<std::string>> sets = {gs, hs, ps, hp};
  for (const auto& big : sets) {
    for (const auto& small : sets) {
      if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
      add(Axiom::Inclusion, meet_mode ? dependence(term(big), term(small)) : dependence(term(small), term(big)));
    }
  }

  const auto G = term(gs), H = term(hs), P = term(ps), HP = term(hp);
  if (meet_mode) {
    add(Axiom::Additivity, implies(conj(dependence(G, H), dependence(G, P)), dependence(G, HP)));
  } else {
    add(Axiom::Additivity, implies(conj(dependence(H, G), dependence(P, G)), dependence(HP, G)));
  }
  add(Axiom::Transitivity, implies(conj(dependence(G, H), dependence(H, P)), dependence(G, P)));
  for (const auto& phi : bodies) {
    add(Axiom::Transfer, implies(conj(dependence(G, H), box(H, phi)), box(G, phi)));
  }
  return out;
}

}  // namespace modcat

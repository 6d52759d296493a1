#include "modcat/evaluator.hpp"

#include <algorithm>
#include <set>

namespace modcat {
namespace {

void check_formula_names(const Formula& f, const Model& m, bool static_only) {
  const auto props = m.propositions();
  visit(f, [&](const Formula& g) {
    if (const auto* p = g.as<node::Prop>()) {
      if (!std::binary_search(props.begin(), props.end(), p->name)) {
        throw Error("unknown proposition '" + p->name + "'");
      }
    } else if (const auto* b = g.as<node::Modal>()) {
      for (const auto& a : b->group.members()) m.agent(a);
    }
  });
  if (static_only && !is_static(f)) {
    throw Error("precondition '" + print(f) + "' must not contain dependence atoms or dynamic operators");
  }
}

}  // namespace

const GeometricObject& ProductType::geometry_for(const std::string& agent) const {
  if (auto it = agent_geometry.find(agent); it != agent_geometry.end()) return it->second;
  if (geometry) return *geometry;
  throw Error("product type has no event structure for agent '" + agent + "'");
}

ProductType announcement_type(const FormulaPtr& phi, const std::map<std::string, Kind>& agent_kinds) {
  ProductType t;
  t.events = Universe::make({"*"});
  for (const auto& [name, kind] : agent_kinds) t.agent_geometry.emplace(name, top(kind, t.events));
  t.preconditions = {phi};
  return t;
}

Model::Model(UniverseRef universe, std::map<std::string, GeometricObject> agents,
             GeometricObject valuation, std::map<std::string, ProductType> product_types)
    : universe_(std::move(universe)),
      agents_(std::move(agents)),
      valuation_(std::move(valuation)),
      product_types_(std::move(product_types)) {
  if (valuation_.kind() != Kind::Valuation) throw Error("model valuation must be a valuation object");
  if (!same_universe(valuation_.universe(), universe_)) throw Error("valuation over a different universe");
  for (const auto& [p, _] : valuation_.truth()) {
    if (p == "true" || p == "false") throw Error("'" + p + "' is reserved and cannot name a proposition");
  }
  for (const auto& [name, obj] : agents_) {
    if (name == "U") throw Error("'U' is reserved and cannot name an agent");
    if (obj.kind() == Kind::Valuation) throw Error("agent '" + name + "' is a valuation");
    if (!same_universe(obj.universe(), universe_)) throw Error("agent '" + name + "' over a different universe");
    require_valid(obj);
  }
  const auto props = propositions();
  for (const auto& [tname, t] : product_types_) {
    const auto where = "product type '" + tname + "': ";
    if (!t.events) throw Error(where + "missing events");
    for (const auto& e : t.events->names()) {
      if (e.find(kPairSeparator) != std::string::npos) {
        throw Error(where + "event name '" + e + "' contains '" + kPairSeparator + "'");
      }
    }
    for (const auto& [agent, obj] : agents_) {
      const auto& g = t.geometry_for(agent);
      if (g.kind() != obj.kind()) {
        throw Error(where + "event structure for '" + agent + "' is " + std::string(to_string(g.kind())) +
                    " but the agent is " + std::string(to_string(obj.kind())));
      }
      if (!same_universe(g.universe(), t.events)) throw Error(where + "event structure over the wrong universe");
      require_valid(g);
    }
    for (const auto& [p, mask] : t.valuation) {
      if (!std::binary_search(props.begin(), props.end(), p)) throw Error(where + "unknown proposition '" + p + "'");
      if ((mask & ~t.events->full_mask()) != 0) throw Error(where + "valuation outside the event set");
    }
    if (t.preconditions.size() != t.events->size()) throw Error(where + "one precondition per event required");
    for (const auto& pre : t.preconditions) {
      if (!pre) throw Error(where + "missing precondition");
      check_formula_names(*pre, *this, true);
    }
  }
}

const GeometricObject& Model::agent(const std::string& name) const {
  auto it = agents_.find(name);
  if (it == agents_.end()) throw Error("unknown agent '" + name + "'");
  return it->second;
}

const ProductType& Model::product_type(const std::string& name) const {
  auto it = product_types_.find(name);
  if (it == product_types_.end()) throw Error("unknown product type '" + name + "'");
  return it->second;
}

std::map<std::string, Kind> Model::agent_kinds() const {
  std::map<std::string, Kind> out;
  for (const auto& [name, obj] : agents_) out.emplace(name, obj.kind());
  return out;
}

Model Model::with_agent(const std::string& name, GeometricObject obj) const {
  auto agents = agents_;
  agents.insert_or_assign(name, std::move(obj));
  return Model(universe_, std::move(agents), valuation_, product_types_);
}

Model Model::with_valuation(GeometricObject valuation) const {
  return Model(universe_, agents_, std::move(valuation), product_types_);
}

Model Model::with_product_type(const std::string& name, ProductType type) const {
  auto types = product_types_;
  types.insert_or_assign(name, std::move(type));
  return Model(universe_, agents_, valuation_, std::move(types));
}

void check_limits(const Model& m, const Limits& limits) {
  const std::size_t n = m.size();
  if (n > limits.max_worlds) {
    throw Error("universe-cap exceeded: " + std::to_string(n) + " worlds (max " +
                std::to_string(limits.max_worlds) + ")");
  }
  for (const auto& [name, obj] : m.agents()) {
    if (is_table_kind(obj.kind()) && n > limits.max_table_worlds) {
      throw Error("universe-cap exceeded: agent '" + name + "' is " + std::string(to_string(obj.kind())) +
                  " over " + std::to_string(n) + " worlds (max " + std::to_string(limits.max_table_worlds) + ")");
    }
  }
}

GeometricObject group_object(const Model& m, const GroupTerm& g) {
  if (g.is_singleton()) return m.agent(g.members().front());
  std::vector<GeometricObject> family;
  for (const auto& a : g.members()) family.push_back(m.agent(a));
  const Kind k = family.front().kind();
  for (const auto& obj : family) {
    if (obj.kind() != k) throw Error("group " + print(g) + " mixes agents of different kinds");
  }
  return g.mode() == GroupMode::Distributive ? meet(k, m.universe(), family) : join(k, m.universe(), family);
}

Mask dependence_set(const GeometricObject& g, const GeometricObject& h) {
  if (!same_universe(g.universe(), h.universe())) throw Error("dependence between different universes");
  const std::size_t n = g.size();
  if (!is_table_kind(g.kind()) && !is_table_kind(h.kind())) {
    // x ∈ m(S) iff N(x) ⊆ S, so H-knowledge transfers to G iff N_G(x) ⊆ N_H(x).
    auto nbhd = [n](const GeometricObject& a) {
      return a.kind() == Kind::Topology ? minimal_neighbourhoods(a.opens(), n) : a.rows();
    };
    const auto ng = nbhd(g);
    const auto nh = nbhd(h);
    Mask out = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if ((ng[x] & ~nh[x]) == 0) out |= Mask{1} << x;
    }
    return out;
  }
  return local_dependence_set(semantic_functor(h), semantic_functor(g)).bits();
}

Model restrict(const Model& m, const Subset& s) {
  const auto i = FiniteFunction::inclusion(m.universe(), s);
  std::map<std::string, GeometricObject> agents;
  for (const auto& [name, obj] : m.agents()) agents.emplace(name, pullback(i, obj));
  return Model(i.domain(), std::move(agents), pullback(i, m.valuation()), m.product_types());
}

Model announce(const Model& m, const Formula& phi, const Limits& limits) {
  return restrict(m, eval(m, phi, limits));
}

Model empty_update(const Model& m) {
  std::map<std::string, GeometricObject> agents;
  for (const auto& [name, obj] : m.agents()) agents.emplace(name, top(obj.kind(), m.universe()));
  return Model(m.universe(), std::move(agents), m.valuation(), m.product_types());
}

ProductUpdate apply_product(const Model& m, const ProductType& type, const Limits& limits) {
  std::vector<Subset> fibres;
  fibres.reserve(type.preconditions.size());
  for (const auto& pre : type.preconditions) fibres.push_back(eval(m, pre, limits));
  auto sum = dependent_sum(type.events, m.universe(), fibres);
  if (sum.pairs->size() > limits.max_worlds) {
    throw Error("universe-cap exceeded: product update yields " + std::to_string(sum.pairs->size()) +
                " worlds (max " + std::to_string(limits.max_worlds) + ")");
  }

  std::map<std::string, GeometricObject> agents;
  for (const auto& [name, obj] : m.agents()) {
    agents.emplace(name, meet(pullback(sum.to_worlds, obj), pullback(sum.to_events, type.geometry_for(name))));
  }
  std::map<std::string, Mask> w;
  for (const auto& p : m.propositions()) {
    auto it = type.valuation.find(p);
    w[p] = it == type.valuation.end() ? type.events->full_mask() : it->second;
  }
  const auto event_val = GeometricObject::valuation(type.events, std::move(w));
  auto val = meet(pullback(sum.to_worlds, m.valuation()), pullback(sum.to_events, event_val));

  Model updated(sum.pairs, std::move(agents), std::move(val), m.product_types());
  check_limits(updated, limits);
  return {std::move(updated), std::move(sum)};
}

ProductUpdate apply_product(const Model& m, const std::string& type, const Limits& limits) {
  return apply_product(m, m.product_type(type), limits);
}

Mask event_mask(const ProductType& type, const std::vector<std::string>& events) {
  Mask out = 0;
  for (const auto& e : events) {
    auto i = type.events->find(e);
    if (!i) throw Error("unknown event '" + e + "'");
    out |= Mask{1} << *i;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Mask eval_mask(const Model& m, const Formula& f, const Limits& limits) {
  const Mask full = m.universe()->full_mask();
  return std::visit(
      [&](const auto& x) -> Mask {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Prop>) {
          const auto& truth = m.valuation().truth();
          auto it = truth.find(x.name);
          if (it == truth.end()) throw Error("unknown proposition '" + x.name + "'");
          return it->second;
        } else if constexpr (std::is_same_v<T, node::Const>) {
          return x.value ? full : 0;
        } else if constexpr (std::is_same_v<T, node::Not>) {
          return full & ~eval_mask(m, *x.body, limits);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          const Mask a = eval_mask(m, *x.lhs, limits);
          const Mask b = eval_mask(m, *x.rhs, limits);
          switch (x.op) {
            case BinaryOp::And: return a & b;
            case BinaryOp::Or: return a | b;
            case BinaryOp::Imp: return (full & ~a) | b;
          }
          return 0;
        } else if constexpr (std::is_same_v<T, node::Modal>) {
          const auto obj = group_object(m, x.group);
          const Mask body = eval_mask(m, *x.body, limits);
          if (x.box) return apply_modality(obj, body);
          return full & ~apply_modality(obj, full & ~body);
        } else if constexpr (std::is_same_v<T, node::Dep>) {
          return dependence_set(group_object(m, x.g), group_object(m, x.h));
        } else if constexpr (std::is_same_v<T, node::Announce>) {
          const Subset s(m.size(), eval_mask(m, *x.announced, limits));
          const auto i = FiniteFunction::inclusion(m.universe(), s);
          const Mask inner = eval_mask(restrict(m, s), *x.body, limits);
          return x.box ? i.universal_image_mask(inner) : i.image_mask(inner);
        } else if constexpr (std::is_same_v<T, node::EmptyUpdate>) {
          return eval_mask(empty_update(m), *x.body, limits);
        } else {
          const auto& type = m.product_type(x.type);
          const Mask chosen = event_mask(type, x.events);
          const auto upd = apply_product(m, type, limits);
          const Mask in_s = upd.sum.to_events.preimage_mask(chosen);
          const Mask body = eval_mask(upd.model, *x.body, limits);
          const Mask pair_full = upd.sum.pairs->full_mask();
          if (x.box) return upd.sum.to_worlds.universal_image_mask((pair_full & ~in_s) | body);
          return upd.sum.to_worlds.image_mask(in_s & body);
        }
      },
      f.node());
}

}  // namespace

Subset eval(const Model& m, const Formula& f, const Limits& limits) {
  return Subset(m.size(), eval_mask(m, f, limits));
}

Subset eval(const Model& m, const FormulaPtr& f, const Limits& limits) {
  if (!f) throw Error("null formula");
  return eval(m, *f, limits);
}

}  // namespace modcat

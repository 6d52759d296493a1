#include "modcat/oracle.hpp"

#include <algorithm>

namespace modcat {
namespace {

// Preimage computed from the graph alone.
Mask inverse_image(const FiniteFunction& f, Mask t) {
  Mask out = 0;
  for (std::size_t x = 0; x < f.graph().size(); ++x) {
    if ((t >> f.graph()[x]) & 1U) out |= Mask{1} << x;
  }
  return out;
}

bool bit(Mask m, std::size_t i) { return ((m >> i) & 1U) != 0; }

std::vector<GeometricObject> test_objects(Kind kind, const UniverseRef& z, const OracleOptions& options,
                                          std::span<const std::string> props, Rng& rng) {
  if (fibre_size(kind, z->size(), props.size()) <= options.exhaustive_limit) {
    return all_objects(kind, z, props);
  }
  std::vector<GeometricObject> out;
  out.push_back(top(kind, z, props));
  out.push_back(bottom(kind, z, props));
  for (std::size_t i = 0; i < options.samples; ++i) out.push_back(random_object(kind, z, rng, props));
  return out;
}

}  // namespace

bool is_morphism(const FiniteFunction& f, const GeometricObject& a, const GeometricObject& b) {
  if (a.kind() != b.kind()) throw Error("is_morphism: kind mismatch");
  if (!same_universe(f.domain(), a.universe()) || !same_universe(f.codomain(), b.universe())) {
    throw Error("is_morphism: universe mismatch");
  }
  const auto& g = f.graph();
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence:
      // x R x' ⇒ f x R f x'
      for (std::size_t x = 0; x < g.size(); ++x) {
        for (std::size_t y = 0; y < g.size(); ++y) {
          if (bit(a.rows()[x], y) && !bit(b.rows()[g[x]], g[y])) return false;
        }
      }
      return true;
    case Kind::Topology:
      for (auto v : b.opens()) {
        const Mask u = inverse_image(f, v);
        if (std::find(a.opens().begin(), a.opens().end(), u) == a.opens().end()) return false;
      }
      return true;
    case Kind::Neighbourhood:
      // f x F V ⇒ x E f⁻¹V
      for (std::size_t v = 0; v < b.table().size(); ++v) {
        const Mask pre = inverse_image(f, v);
        for (std::size_t x = 0; x < g.size(); ++x) {
          if (bit(b.table()[v], g[x]) && !bit(a.table()[pre], x)) return false;
        }
      }
      return true;
    case Kind::Cabao:
      // f⁻¹ ∘ n ⊆ m ∘ f⁻¹
      for (std::size_t v = 0; v < b.table().size(); ++v) {
        if ((inverse_image(f, b.table()[v]) & ~a.table()[inverse_image(f, v)]) != 0) return false;
      }
      return true;
    case Kind::Valuation:
      // V ⊆ f⁻¹ ∘ W
      for (const auto& [p, vp] : a.truth()) {
        auto it = b.truth().find(p);
        if (it == b.truth().end()) throw Error("is_morphism: valuation proposition sets differ");
        if ((vp & ~inverse_image(f, it->second)) != 0) return false;
      }
      return true;
  }
  return false;
}

bool verify_initial_lift(Kind kind, const UniverseRef& x, const Source& source,
                         const GeometricObject& candidate, const OracleOptions& options) {
  if (candidate.kind() != kind || !same_universe(candidate.universe(), x)) return false;
  for (const auto& [f, a] : source) {
    if (!same_universe(f.domain(), x) || !same_universe(f.codomain(), a.universe()) || a.kind() != kind) {
      throw Error("verify_initial_lift: malformed source");
    }
  }
  const auto props = candidate.propositions();
  Rng rng(options.seed);
  for (std::size_t z = 0; z <= options.max_test_domain; ++z) {
    const auto zu = Universe::range(z);
    const auto objects = test_objects(kind, zu, options, props, rng);
    for (const auto& g : all_functions(zu, x)) {
      std::vector<FiniteFunction> composites;
      for (const auto& [f, a] : source) composites.push_back(compose(f, g));
      for (const auto& b : objects) {
        const bool into_candidate = is_morphism(g, b, candidate);
        bool into_all = true;
        for (std::size_t i = 0; i < source.size() && into_all; ++i) {
          into_all = is_morphism(composites[i], b, source[i].second);
        }
        if (into_candidate != into_all) return false;
      }
    }
  }
  return true;
}

bool verify_adjunction(Kind kind, const FiniteFunction& f, const OracleOptions& options,
                       std::span<const std::string> props) {
  Rng rng(options.seed);
  const auto xs = test_objects(kind, f.domain(), options, props, rng);
  const auto ys = test_objects(kind, f.codomain(), options, props, rng);
  const auto id_x = FiniteFunction::identity(f.domain());
  const auto id_y = FiniteFunction::identity(f.codomain());
  std::vector<GeometricObject> pushed, pulled;
  for (const auto& a : xs) pushed.push_back(pushforward(f, a));
  for (const auto& b : ys) pulled.push_back(pullback(f, b));
  auto agrees = [&](const GeometricObject& a, const GeometricObject& pa, const GeometricObject& b,
                    const GeometricObject& pb) {
    return is_morphism(id_y, pa, b) == is_morphism(id_x, a, pb);
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (!agrees(xs[i], pushed[i], ys[j], pulled[j])) return false;
    }
    // The unit and counit pairs are where an off-by-one formula shows first.
    if (!agrees(xs[i], pushed[i], pushed[i], pullback(f, pushed[i]))) return false;
  }
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const auto a = pulled[j];
    if (!agrees(a, pushforward(f, a), ys[j], pulled[j])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Classical relational semantics

namespace {

using Relation = std::vector<std::vector<bool>>;

Relation relation_of(const GeometricObject& a) {
  if (!is_relational(a.kind())) throw Error("classical oracle needs relational agents");
  const std::size_t n = a.size();
  Relation r(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) r[x][y] = bit(a.rows()[x], y);
  }
  return r;
}

Relation group_relation(const ClassicalModel& m, const GroupTerm& g) {
  const std::size_t n = m.worlds;
  const bool inter = g.mode() == GroupMode::Distributive;
  Relation r(n, std::vector<bool>(n, inter));
  for (const auto& a : g.members()) {
    auto it = m.access.find(a);
    if (it == m.access.end()) throw Error("unknown agent '" + a + "'");
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) r[x][y] = inter ? (r[x][y] && it->second[x][y]) : (r[x][y] || it->second[x][y]);
    }
  }
  return r;
}

ClassicalModel submodel(const ClassicalModel& m, const std::vector<bool>& keep) {
  std::vector<std::size_t> idx;
  for (std::size_t x = 0; x < m.worlds; ++x) {
    if (keep[x]) idx.push_back(x);
  }
  ClassicalModel out;
  out.worlds = idx.size();
  for (const auto& [a, r] : m.access) {
    Relation s(idx.size(), std::vector<bool>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) s[i][j] = r[idx[i]][idx[j]];
    }
    out.access.emplace(a, std::move(s));
  }
  for (const auto& [p, t] : m.truth) {
    std::vector<bool> s(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) s[i] = t[idx[i]];
    out.truth.emplace(p, std::move(s));
  }
  return out;
}

}  // namespace

ClassicalModel to_classical(const Model& m) {
  ClassicalModel out;
  out.worlds = m.size();
  for (const auto& [name, obj] : m.agents()) out.access.emplace(name, relation_of(obj));
  for (const auto& [p, mask] : m.valuation().truth()) {
    std::vector<bool> t(m.size());
    for (std::size_t x = 0; x < m.size(); ++x) t[x] = bit(mask, x);
    out.truth.emplace(p, std::move(t));
  }
  return out;
}

std::vector<bool> classical_eval(const ClassicalModel& m, const Formula& f) {
  const std::size_t n = m.worlds;
  if (const auto* p = f.as<node::Prop>()) {
    auto it = m.truth.find(p->name);
    if (it == m.truth.end()) throw Error("unknown proposition '" + p->name + "'");
    return it->second;
  }
  if (const auto* c = f.as<node::Const>()) return std::vector<bool>(n, c->value);
  if (const auto* x = f.as<node::Not>()) {
    auto v = classical_eval(m, *x->body);
    for (std::size_t i = 0; i < n; ++i) v[i] = !v[i];
    return v;
  }
  if (const auto* b = f.as<node::Binary>()) {
    const auto l = classical_eval(m, *b->lhs);
    const auto r = classical_eval(m, *b->rhs);
    std::vector<bool> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (b->op) {
        case BinaryOp::And: v[i] = l[i] && r[i]; break;
        case BinaryOp::Or: v[i] = l[i] || r[i]; break;
        case BinaryOp::Imp: v[i] = !l[i] || r[i]; break;
      }
    }
    return v;
  }
  if (const auto* md = f.as<node::Modal>()) {
    const auto r = group_relation(m, md->group);
    const auto body = classical_eval(m, *md->body);
    std::vector<bool> v(n);
    for (std::size_t x = 0; x < n; ++x) {
      bool all = true, some = false;
      for (std::size_t y = 0; y < n; ++y) {
        if (!r[x][y]) continue;
        all = all && body[y];
        some = some || body[y];
      }
      v[x] = md->box ? all : some;
    }
    return v;
  }
  if (const auto* an = f.as<node::Announce>()) {
    const auto keep = classical_eval(m, *an->announced);
    const auto inner = classical_eval(submodel(m, keep), *an->body);
    std::vector<bool> v(n);
    std::size_t k = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (keep[x]) {
        v[x] = inner[k++];
      } else {
        v[x] = an->box;
      }
    }
    return v;
  }
  throw Error("classical oracle does not interpret '" + print(f) + "'");
}

Subset classical_pal_oracle(const Model& m, const Formula& phi, const Formula& psi) {
  const auto cm = to_classical(m);
  const auto keep = classical_eval(cm, phi);
  const auto inner = classical_eval(submodel(cm, keep), psi);
  Mask out = 0;
  std::size_t k = 0;
  for (std::size_t x = 0; x < cm.worlds; ++x) {
    // x ⊨ [!φ]ψ iff x ⊨ φ implies x ⊨ ψ after deletion.
    if (!keep[x] || inner[k]) out |= Mask{1} << x;
    if (keep[x]) ++k;
  }
  return Subset(m.size(), out);
}

ClassicalEventModel to_classical(const ProductType& t, const Model& m) {
  ClassicalEventModel out;
  out.events = t.events->size();
  for (const auto& [name, _] : m.agents()) out.access.emplace(name, relation_of(t.geometry_for(name)));
  for (const auto& [p, mask] : t.valuation) {
    std::vector<bool> v(out.events);
    for (std::size_t e = 0; e < out.events; ++e) v[e] = bit(mask, e);
    out.truth.emplace(p, std::move(v));
  }
  out.preconditions = t.preconditions;
  return out;
}

Subset classical_del_oracle(const Model& m, const ProductType& t, Mask events, const Formula& psi, bool box) {
  const auto cm = to_classical(m);
  const auto em = to_classical(t, m);
  std::vector<std::vector<bool>> pre;
  for (const auto& f : em.preconditions) pre.push_back(classical_eval(cm, *f));

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t e = 0; e < em.events; ++e) {
    for (std::size_t x = 0; x < cm.worlds; ++x) {
      if (pre[e][x]) pairs.emplace_back(e, x);
    }
  }
  ClassicalModel up;
  up.worlds = pairs.size();
  for (const auto& [a, rx] : cm.access) {
    const auto& re = em.access.at(a);
    Relation r(pairs.size(), std::vector<bool>(pairs.size()));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        r[i][j] = re[pairs[i].first][pairs[j].first] && rx[pairs[i].second][pairs[j].second];
      }
    }
    up.access.emplace(a, std::move(r));
  }
  for (const auto& [p, tx] : cm.truth) {
    auto it = em.truth.find(p);
    std::vector<bool> v(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const bool at_event = it == em.truth.end() || it->second[pairs[i].first];
      v[i] = tx[pairs[i].second] && at_event;
    }
    up.truth.emplace(p, std::move(v));
  }
  const auto body = classical_eval(up, psi);

  Mask out = box ? low_bits(cm.worlds) : 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [e, x] = pairs[i];
    if (!bit(events, e)) continue;
    if (box && !body[i]) out &= ~(Mask{1} << x);
    if (!box && body[i]) out |= Mask{1} << x;
  }
  return Subset(m.size(), out);
}

}  // namespace modcat

#include "modcat/generators.hpp"

#include <algorithm>

namespace modcat {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out *= base;
  }
  return out;
}

std::uint64_t pow2(std::size_t e) {
  return e >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << e;
}

std::vector<Mask> random_rows(std::size_t n, std::size_t num, std::size_t den, Rng& rng) {
  std::vector<Mask> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.chance(num, den)) rows[i] |= Mask{1} << j;
    }
  }
  return rows;
}

bool is_preorder(const std::vector<Mask>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (((rows[i] >> i) & 1U) == 0) return false;
    bool ok = true;
    for_each_bit(rows[i], [&](std::size_t j) { ok = ok && (rows[j] & ~rows[i]) == 0; });
    if (!ok) return false;
  }
  return true;
}

bool is_symmetric(const std::vector<Mask>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool ok = true;
    for_each_bit(rows[i], [&](std::size_t j) { ok = ok && ((rows[j] >> i) & 1U) != 0; });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::size_t Rng::below(std::size_t n) {
  if (n == 0) throw Error("Rng::below(0)");
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

Rng Rng::derive(std::uint64_t salt) const { return Rng(splitmix64(seed_ ^ splitmix64(salt))); }

std::vector<std::string> proposition_names(std::size_t n) {
  static const char* base[] = {"p", "q", "r", "s"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < 4 ? base[i] : "p" + std::to_string(i));
  return out;
}

std::vector<std::string> agent_names(std::size_t n) {
  if (n > 20) throw Error("too many agents");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(1, static_cast<char>('a' + i));
  return out;
}

GeometricObject random_object(Kind kind, const UniverseRef& u, Rng& rng, std::span<const std::string> props) {
  const std::size_t n = u->size();
  switch (kind) {
    case Kind::Kripke: {
      const std::size_t density = 1 + rng.below(5);
      return GeometricObject::relation(kind, u, random_rows(n, density, 6, rng));
    }
    case Kind::Preorder: {
      const std::size_t density = rng.below(4);
      return GeometricObject::relation(kind, u, reflexive_transitive_closure(random_rows(n, density, 8, rng)));
    }
    case Kind::Equivalence: {
      std::vector<std::size_t> block(n);
      const std::size_t blocks = 1 + rng.below(std::max<std::size_t>(n, 1));
      for (auto& b : block) b = rng.below(blocks);
      std::vector<Mask> rows(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (block[i] == block[j]) rows[i] |= Mask{1} << j;
        }
      }
      return GeometricObject::relation(kind, u, std::move(rows));
    }
    case Kind::Topology: {
      // Every finite topology is the up-set topology of its specialisation preorder.
      const std::size_t density = rng.below(4);
      const auto pre = reflexive_transitive_closure(random_rows(n, density, 8, rng));
      return GeometricObject::topology(u, opens_from_neighbourhoods(pre, n));
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      if (n > kMaxTableUniverse) throw Error("universe too large for an operator table");
      std::vector<Mask> t(std::size_t{1} << n);
      for (auto& v : t) v = rng.mask(n);
      return kind == Kind::Cabao ? GeometricObject::cabao(u, std::move(t))
                                 : GeometricObject::neighbourhood(u, std::move(t));
    }
    case Kind::Valuation: {
      std::map<std::string, Mask> truth;
      for (const auto& p : props) truth[p] = rng.mask(n);
      return GeometricObject::valuation(u, std::move(truth));
    }
  }
  throw Error("random_object: unknown kind");
}

FiniteFunction random_function(const UniverseRef& domain, const UniverseRef& codomain, Rng& rng) {
  if (domain->size() > 0 && codomain->size() == 0) throw Error("no function into the empty set");
  std::vector<std::size_t> graph(domain->size());
  for (auto& y : graph) y = rng.below(codomain->size());
  return FiniteFunction(domain, codomain, std::move(graph));
}

Model random_model(const ModelShape& shape, Rng& rng) {
  auto u = Universe::range(shape.worlds);
  const auto props = proposition_names(shape.props);
  const auto names = agent_names(shape.agent_kinds.size());
  std::map<std::string, GeometricObject> agents;
  for (std::size_t i = 0; i < names.size(); ++i) {
    agents.emplace(names[i], random_object(shape.agent_kinds[i], u, rng));
  }
  Model m(u, std::move(agents), random_object(Kind::Valuation, u, rng, props));
  for (std::size_t t = 0; t < shape.product_types; ++t) {
    const std::size_t events = 1 + rng.below(std::max<std::size_t>(shape.max_events, 1));
    m = m.with_product_type("E" + std::to_string(t),
                            random_product_type(m, events, shape.precondition_depth, rng));
  }
  return m;
}

ProductType random_product_type(const Model& m, std::size_t events, std::size_t precondition_depth, Rng& rng) {
  ProductType t;
  std::vector<std::string> names;
  for (std::size_t e = 0; e < events; ++e) names.push_back("e" + std::to_string(e));
  t.events = Universe::make(std::move(names));
  for (const auto& [agent, obj] : m.agents()) {
    t.agent_geometry.emplace(agent, random_object(obj.kind(), t.events, rng));
  }
  for (const auto& p : m.propositions()) {
    if (rng.chance(1, 2)) t.valuation[p] = rng.mask(events);
  }
  Signature sig;
  for (const auto& [agent, _] : m.agents()) sig.agents.push_back(agent);
  sig.props = m.propositions();
  for (std::size_t e = 0; e < events; ++e) {
    t.preconditions.push_back(random_formula(sig, Fragment::Basic, {precondition_depth, 0}, rng));
  }
  return t;
}

namespace {

class FormulaGen {
 public:
  FormulaGen(const Signature& sig, Fragment fragment, Rng& rng)
      : sig_(sig), fragment_(fragment), rng_(rng), groups_(group_terms(fragment, sig.agents)) {
    with_dep_ = fragment == Fragment::Dependence || fragment == Fragment::GroupsMeet ||
                fragment == Fragment::GroupsJoin;
    if (with_dep_ && groups_.size() < 2) with_dep_ = false;
  }

  FormulaPtr atom() {
    const std::size_t props = sig_.props.size();
    const std::size_t consts = sig_.constants ? 2 : 0;
    const std::size_t deps = with_dep_ ? 1 : 0;
    const std::size_t total = props + consts + deps;
    if (total == 0) throw Error("signature has no atoms");
    // Propositions are drawn three times as often as the other atoms.
    std::size_t pick = rng_.below(3 * props + consts + deps);
    if (pick < 3 * props) return prop(sig_.props[pick / 3]);
    pick -= 3 * props;
    if (pick < consts) return pick == 0 ? top_formula() : bottom_formula();
    const auto& g = groups_[rng_.below(groups_.size())];
    auto h = groups_[rng_.below(groups_.size() - 1)];
    if (h == g) h = groups_.back();
    return dependence(g, h);
  }

  FormulaPtr gen(std::size_t depth, std::size_t dynamic) {
    if (depth == 0 || rng_.chance(1, 5)) return atom();
    enum Choice { Neg, And, Or, Imp, Box, Dia, Ann, AnnDia, Empty, Prod, ProdDia };
    std::vector<Choice> choices = {Neg, And, Or, Imp};
    if (!groups_.empty()) {
      choices.insert(choices.end(), {Box, Box, Dia, Dia});
    }
    if (dynamic > 0 && fragment_ == Fragment::Announcement) choices.insert(choices.end(), {Ann, Ann, AnnDia, AnnDia});
    if (dynamic > 0 && fragment_ == Fragment::Product) {
      choices.push_back(Empty);
      if (!sig_.updates.empty()) choices.insert(choices.end(), {Prod, Prod, ProdDia, ProdDia});
    }
    const auto c = choices[rng_.below(choices.size())];
    switch (c) {
      case Neg: return negation(gen(depth - 1, dynamic));
      case And: return conj(gen(depth - 1, dynamic), gen(depth - 1, dynamic));
      case Or: return disj(gen(depth - 1, dynamic), gen(depth - 1, dynamic));
      case Imp: return implies(gen(depth - 1, dynamic), gen(depth - 1, dynamic));
      case Box: return box(pick_group(), gen(depth - 1, dynamic));
      case Dia: return diamond(pick_group(), gen(depth - 1, dynamic));
      case Ann: return announce_box(gen(depth - 1, dynamic - 1), gen(depth - 1, dynamic - 1));
      case AnnDia: return announce_diamond(gen(depth - 1, dynamic - 1), gen(depth - 1, dynamic - 1));
      case Empty: return empty_update(gen(depth - 1, dynamic - 1));
      case Prod:
      case ProdDia: {
        const auto& [type, events] = sig_.updates[rng_.below(sig_.updates.size())];
        auto body = gen(depth - 1, dynamic - 1);
        return c == Prod ? product_box(type, events, body) : product_diamond(type, events, body);
      }
    }
    return atom();
  }

 private:
  const GroupTerm& pick_group() { return groups_[rng_.below(groups_.size())]; }

  const Signature& sig_;
  Fragment fragment_;
  Rng& rng_;
  std::vector<GroupTerm> groups_;
  bool with_dep_ = false;
};

}  // namespace

FormulaPtr random_formula(const Signature& sig, Fragment fragment, const FormulaShape& shape, Rng& rng) {
  FormulaGen gen(sig, fragment, rng);
  return gen.gen(shape.max_depth, shape.max_dynamic_nesting);
}

Signature signature_of(const Model& m) {
  Signature sig;
  for (const auto& [agent, _] : m.agents()) sig.agents.push_back(agent);
  sig.props = m.propositions();
  for (const auto& [name, type] : m.product_types()) {
    const std::size_t e = type.events->size();
    if (e > 6) continue;
    for (Mask s = 1; s < (Mask{1} << e); ++s) {
      std::vector<std::string> events;
      for_each_bit(s, [&](std::size_t i) { events.push_back(type.events->name(i)); });
      sig.updates.emplace_back(name, std::move(events));
    }
  }
  return sig;
}

std::uint64_t fibre_size(Kind kind, std::size_t n, std::size_t props) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Labelled preorders (equivalently finite topologies) and Bell numbers.
  static const std::uint64_t preorders[] = {1, 1, 4, 29, 355, 6942, 209527, 9535241};
  switch (kind) {
    case Kind::Kripke:
      return n >= 8 ? kMax : pow2(n * n);
    case Kind::Preorder:
    case Kind::Topology:
      return n < std::size(preorders) ? preorders[n] : kMax;
    case Kind::Equivalence: {
      // Bell triangle.
      std::vector<std::uint64_t> row = {1};
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next = {row.back()};
        for (auto v : row) {
          if (next.back() > kMax - v) return kMax;
          next.push_back(next.back() + v);
        }
        row = std::move(next);
      }
      return row.front();
    }
    case Kind::Neighbourhood:
    case Kind::Cabao:
      return n >= 6 ? kMax : saturating_pow(pow2(n), pow2(n));
    case Kind::Valuation:
      return saturating_pow(pow2(n), props);
  }
  return kMax;
}

std::vector<GeometricObject> all_objects(Kind kind, const UniverseRef& u, std::span<const std::string> props) {
  constexpr std::uint64_t kCap = std::uint64_t{1} << 20;
  const std::size_t n = u->size();
  std::vector<GeometricObject> out;
  auto enumerate_relations = [&](auto&& keep) {
    if (n * n > 20) throw Error("relation fibre too large to enumerate");
    const std::uint64_t total = pow2(n * n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      std::vector<Mask> rows(n);
      for (std::size_t i = 0; i < n; ++i) rows[i] = (bits >> (i * n)) & low_bits(n);
      if (keep(rows)) out.push_back(GeometricObject::relation(kind, u, std::move(rows)));
    }
  };
  switch (kind) {
    case Kind::Kripke:
      enumerate_relations([](const std::vector<Mask>&) { return true; });
      return out;
    case Kind::Preorder:
      enumerate_relations([](const std::vector<Mask>& r) { return is_preorder(r); });
      return out;
    case Kind::Equivalence:
      enumerate_relations([](const std::vector<Mask>& r) { return is_preorder(r) && is_symmetric(r); });
      return out;
    case Kind::Topology: {
      if (n > 4) throw Error("topology fibre too large to enumerate");
      const std::size_t subsets = std::size_t{1} << n;
      const Mask full = low_bits(n);
      for (std::uint64_t family = 0; family < pow2(subsets); ++family) {
        auto has = [&](Mask s) { return ((family >> s) & 1U) != 0; };
        if (!has(0) || !has(full)) continue;
        bool closed = true;
        for (Mask a = 0; a < subsets && closed; ++a) {
          if (!has(a)) continue;
          for (Mask b = a + 1; b < subsets && closed; ++b) {
            if (has(b) && (!has(a | b) || !has(a & b))) closed = false;
          }
        }
        if (!closed) continue;
        std::vector<Mask> opens;
        for (Mask s = 0; s < subsets; ++s) {
          if (has(s)) opens.push_back(s);
        }
        out.push_back(GeometricObject::topology(u, std::move(opens)));
      }
      return out;
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      const auto total = fibre_size(kind, n);
      if (total > kCap) throw Error("operator fibre too large to enumerate");
      const std::size_t entries = std::size_t{1} << n;
      const std::uint64_t values = pow2(n);
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Mask> t(entries);
        std::uint64_t c = code;
        for (auto& v : t) {
          v = c % values;
          c /= values;
        }
        out.push_back(kind == Kind::Cabao ? GeometricObject::cabao(u, std::move(t))
                                          : GeometricObject::neighbourhood(u, std::move(t)));
      }
      return out;
    }
    case Kind::Valuation: {
      const auto total = fibre_size(kind, n, props.size());
      if (total > kCap) throw Error("valuation fibre too large to enumerate");
      const std::uint64_t values = pow2(n);
      for (std::uint64_t code = 0; code < total; ++code) {
        std::map<std::string, Mask> truth;
        std::uint64_t c = code;
        for (const auto& p : props) {
          truth[p] = c % values;
          c /= values;
        }
        out.push_back(GeometricObject::valuation(u, std::move(truth)));
      }
      return out;
    }
  }
  return out;
}

std::vector<FiniteFunction> all_functions(const UniverseRef& domain, const UniverseRef& codomain) {
  const std::size_t n = domain->size();
  const std::size_t m = codomain->size();
  const auto total = saturating_pow(m, n);
  if (total > (std::uint64_t{1} << 20)) throw Error("too many functions to enumerate");
  std::vector<FiniteFunction> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::size_t> graph(n);
    std::uint64_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      graph[i] = c % m;
      c /= m;
    }
    out.emplace_back(domain, codomain, std::move(graph));
  }
  return out;
}

}  // namespace modcat

#include "modcat/functors.hpp"

#include <algorithm>

namespace modcat {
namespace {

GeometricObject to_cabao(const GeometricObject& a) {
  return GeometricObject::cabao(a.universe(), semantic_functor(a).table());
}

std::vector<ConcreteFunctor> make_builtins() {
  const FunctorProfile all{true, true, true, true, true};
  std::vector<ConcreteFunctor> out;
  out.push_back({"include_eqv_pre", Kind::Equivalence, Kind::Preorder,
                 [](const GeometricObject& a) { return a.with_kind(Kind::Preorder); }, all,
                 "equivalence relations as preorders"});
  out.push_back({"include_pre_kr", Kind::Preorder, Kind::Kripke,
                 [](const GeometricObject& a) { return a.with_kind(Kind::Kripke); },
                 {true, true, false, true, true}, "preorders as Kripke frames"});
  out.push_back({"alexandroff", Kind::Preorder, Kind::Topology,
                 [](const GeometricObject& a) {
                   return GeometricObject::topology(a.universe(), opens_from_neighbourhoods(a.rows(), a.size()));
                 },
                 all, "up-closed sets as opens"});
  out.push_back({"specialization", Kind::Topology, Kind::Preorder,
                 [](const GeometricObject& a) {
                   return GeometricObject::relation(Kind::Preorder, a.universe(),
                                                    minimal_neighbourhoods(a.opens(), a.size()));
                 },
                 all, "x <= y iff x lies in the closure of {y}"});
  out.push_back({"nb_to_cabao", Kind::Neighbourhood, Kind::Cabao,
                 [](const GeometricObject& a) { return a.with_kind(Kind::Cabao); }, all,
                 "m(S) = {x : x E S}"});
  out.push_back({"cabao_to_nb", Kind::Cabao, Kind::Neighbourhood,
                 [](const GeometricObject& a) { return a.with_kind(Kind::Neighbourhood); }, all,
                 "x E S iff x in m(S)"});
  out.push_back({"kripke_to_cabao", Kind::Kripke, Kind::Cabao, to_cabao, {true, false, true, true, false},
                 "box operator of the relation"});
  out.push_back({"preorder_to_cabao", Kind::Preorder, Kind::Cabao, to_cabao, {true, false, false, true, false},
                 "box operator of the preorder"});
  out.push_back({"equivalence_to_cabao", Kind::Equivalence, Kind::Cabao, to_cabao,
                 {true, false, false, true, false}, "box operator of the equivalence"});
  out.push_back({"topology_to_cabao", Kind::Topology, Kind::Cabao, to_cabao, {true, false, false, true, false},
                 "interior operator"});
  out.push_back({"neighbourhood_to_cabao", Kind::Neighbourhood, Kind::Cabao, to_cabao, all,
                 "neighbourhood operator"});
  out.push_back({"cabao_to_cabao", Kind::Cabao, Kind::Cabao, [](const GeometricObject& a) { return a; }, all,
                 "identity"});
  out.push_back({"refl_trans_closure", Kind::Kripke, Kind::Preorder,
                 [](const GeometricObject& a) {
                   return GeometricObject::relation(Kind::Preorder, a.universe(),
                                                    reflexive_transitive_closure(a.rows()));
                 },
                 {false, false, true, false, false}, "least preorder containing the relation"});
  out.push_back({"eqv_closure", Kind::Preorder, Kind::Equivalence,
                 [](const GeometricObject& a) {
                   return GeometricObject::relation(Kind::Equivalence, a.universe(), equivalence_closure(a.rows()));
                 },
                 {false, false, true, false, false}, "least equivalence containing the preorder"});
  out.push_back({"largest_contained_eqv", Kind::Preorder, Kind::Equivalence,
                 [](const GeometricObject& a) {
                   auto rows = a.rows();
                   const auto conv = converse_rows(rows);
                   for (std::size_t i = 0; i < rows.size(); ++i) rows[i] &= conv[i];
                   return GeometricObject::relation(Kind::Equivalence, a.universe(), std::move(rows));
                 },
                 {false, true, false, true, true}, "R intersected with its converse"});
  return out;
}

// ---------------------------------------------------------------------------
// Object supplies

std::vector<GeometricObject> objects_over(Kind kind, const UniverseRef& u, const CheckOptions& options, Rng& rng) {
  if (fibre_size(kind, u->size()) <= 4096) return all_objects(kind, u);
  std::vector<GeometricObject> out = {top(kind, u), bottom(kind, u)};
  for (std::size_t i = 0; i < options.trials; ++i) out.push_back(random_object(kind, u, rng));
  return out;
}

/// Pairs of objects, exhaustive when small.
template <typename Fn>
bool for_each_pair(const std::vector<GeometricObject>& objs, const CheckOptions& options, Rng& rng, Fn&& fn,
                   std::size_t limit = 300000) {
  const std::size_t n = objs.size();
  if (n * n <= limit) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!fn(objs[i], objs[j])) return false;
      }
    }
    return true;
  }
  for (std::size_t t = 0; t < options.trials * 4; ++t) {
    if (!fn(objs[rng.below(n)], objs[rng.below(n)])) return false;
  }
  return true;
}

Model single_agent_model(const GeometricObject& a, std::map<std::string, Mask> truth,
                         std::map<std::string, ProductType> types = {}) {
  return Model(a.universe(), {{"a", a}}, GeometricObject::valuation(a.universe(), std::move(truth)),
               std::move(types));
}

const Limits kHarnessLimits{64, 16};

// ---------------------------------------------------------------------------
// Structural checks

struct Structural {
  bool ok = true;
  std::uint64_t checked = 0;
  std::vector<std::string> objects;
};

Structural structural_check(const ConcreteFunctor& f, Property p, const CheckOptions& options) {
  Structural out;
  Rng rng(options.seed);
  auto fail = [&](std::vector<std::string> objs) {
    out.ok = false;
    out.objects = std::move(objs);
    return false;
  };
  for (std::size_t n = 0; n <= options.max_worlds && out.ok; ++n) {
    const auto u = Universe::range(n);
    const auto objs = objects_over(f.source, u, options, rng);
    switch (p) {
      case Property::Modal:
        for (const auto& a : objs) {
          ++out.checked;
          if (!is_modal_on(f, a)) {
            fail({describe(a), describe(apply(f, a))});
            break;
          }
        }
        break;
      case Property::Meets:
      case Property::Joins: {
        const bool meets = p == Property::Meets;
        for_each_pair(objs, options, rng, [&](const GeometricObject& a, const GeometricObject& b) {
          ++out.checked;
          const auto lhs = apply(f, meets ? meet(a, b) : join(a, b));
          const auto rhs = meets ? meet(apply(f, a), apply(f, b)) : join(apply(f, a), apply(f, b));
          if (lhs == rhs) return true;
          return fail({describe(a), describe(b), describe(lhs), describe(rhs)});
        });
        break;
      }
      case Property::InjectionPullbacks:
        for (Mask s = 0; s < (Mask{1} << n) && out.ok; ++s) {
          const auto i = FiniteFunction::inclusion(u, Subset(n, s));
          for (const auto& a : objs) {
            ++out.checked;
            const auto lhs = apply(f, pullback(i, a));
            const auto rhs = pullback(i, apply(f, a));
            if (!(lhs == rhs)) {
              fail({describe(a), "restricted to " + describe_subset(*u, s), describe(lhs), describe(rhs)});
              break;
            }
          }
        }
        break;
      case Property::PullbacksFiniteMeets: {
        ++out.checked;
        if (!(apply(f, top(f.source, u)) == top(f.target, u))) {
          fail({"top " + describe(top(f.source, u)), "maps to " + describe(apply(f, top(f.source, u)))});
          break;
        }
        for (std::size_t m = 0; m <= options.max_worlds && out.ok; ++m) {
          if (n == 0 && m > 0) break;
          for (const auto& g : all_functions(Universe::range(m), u)) {
            for (const auto& a : objs) {
              ++out.checked;
              const auto lhs = apply(f, pullback(g, a));
              const auto rhs = pullback(g, apply(f, a));
              if (!(lhs == rhs)) {
                std::string graph;
                for (auto v : g.graph()) graph += std::to_string(v) + " ";
                fail({describe(a), "pulled back along [ " + graph + "]", describe(lhs), describe(rhs)});
                break;
              }
            }
            if (!out.ok) break;
          }
        }
        if (!out.ok) break;
        for_each_pair(objs, options, rng, [&](const GeometricObject& a, const GeometricObject& b) {
          ++out.checked;
          const auto lhs = apply(f, meet(a, b));
          const auto rhs = meet(apply(f, a), apply(f, b));
          if (lhs == rhs) return true;
          return fail({describe(a), describe(b), describe(lhs), describe(rhs)});
        });
        break;
      }
      case Property::Language:
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Language checks

struct Witness {
  FormulaPtr formula;
  Model source;
  Model target;
  std::string how;
};

/// Formula-closure search: every pair (⟦φ⟧_M, ⟦φ⟧_FM) reachable within `depth`.
class PairClosure {
 public:
  struct Modality {
    std::vector<Mask> lhs, rhs;  // box tables
    GroupTerm group;
  };
  struct AtomPair {
    Mask lhs, rhs;
    FormulaPtr formula;
  };

  PairClosure(std::size_t n, std::vector<Modality> mods, std::vector<AtomPair> atoms)
      : n_(n), full_(low_bits(n)), mods_(std::move(mods)), atoms_(std::move(atoms)) {}

  /// A formula with differing truth sets, if one exists within `depth`.
  FormulaPtr search(std::size_t depth) {
    entries_.clear();
    seen_.assign(std::size_t{1} << (2 * n_), false);
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      if (add({atoms_[k].lhs, atoms_[k].rhs, Op::Atom, static_cast<int>(k), -1})) return build(entries_.size() - 1);
    }
    std::size_t begin = 0;
    for (std::size_t d = 1; d <= depth; ++d) {
      const std::size_t end = entries_.size();
      for (std::size_t i = begin; i < end; ++i) {
        const auto e = entries_[i];
        if (add({full_ & ~e.lhs, full_ & ~e.rhs, Op::Not, static_cast<int>(i), -1})) return build(entries_.size() - 1);
        for (std::size_t k = 0; k < mods_.size(); ++k) {
          const auto& m = mods_[k];
          if (add({m.lhs[e.lhs], m.rhs[e.rhs], Op::Box, static_cast<int>(i), static_cast<int>(k)})) {
            return build(entries_.size() - 1);
          }
          const Mask dl = full_ & ~m.lhs[full_ & ~e.lhs];
          const Mask dr = full_ & ~m.rhs[full_ & ~e.rhs];
          if (add({dl, dr, Op::Dia, static_cast<int>(i), static_cast<int>(k)})) return build(entries_.size() - 1);
        }
      }
      for (std::size_t i = 0; i < end; ++i) {
        for (std::size_t j = 0; j < end; ++j) {
          if (i < begin && j < begin) continue;
          const auto a = entries_[i], b = entries_[j];
          const int ii = static_cast<int>(i), jj = static_cast<int>(j);
          if (add({a.lhs & b.lhs, a.rhs & b.rhs, Op::And, ii, jj})) return build(entries_.size() - 1);
          if (add({a.lhs | b.lhs, a.rhs | b.rhs, Op::Or, ii, jj})) return build(entries_.size() - 1);
          if (add({(full_ & ~a.lhs) | b.lhs, (full_ & ~a.rhs) | b.rhs, Op::Imp, ii, jj})) {
            return build(entries_.size() - 1);
          }
        }
      }
      begin = end;
      if (begin == entries_.size()) break;
    }
    return nullptr;
  }

 private:
  enum class Op { Atom, Not, Box, Dia, And, Or, Imp };
  struct Entry {
    Mask lhs, rhs;
    Op op;
    int x, y;
  };

  // Returns true when the new pair disagrees.
  bool add(const Entry& e) {
    const std::size_t key = (e.lhs << n_) | e.rhs;
    if (seen_[key]) return false;
    seen_[key] = true;
    entries_.push_back(e);
    return e.lhs != e.rhs;
  }

  FormulaPtr build(std::size_t i) const {
    const auto& e = entries_[i];
    switch (e.op) {
      case Op::Atom: return atoms_[e.x].formula;
      case Op::Not: return negation(build(e.x));
      case Op::Box: return box(mods_[e.y].group, build(e.x));
      case Op::Dia: return diamond(mods_[e.y].group, build(e.x));
      case Op::And: return conj(build(e.x), build(e.y));
      case Op::Or: return disj(build(e.x), build(e.y));
      case Op::Imp: return implies(build(e.x), build(e.y));
    }
    return nullptr;
  }

  std::size_t n_;
  Mask full_;
  std::vector<Modality> mods_;
  std::vector<AtomPair> atoms_;
  std::vector<Entry> entries_;
  std::vector<bool> seen_;
};

std::vector<std::string> fragment_agents(Fragment fragment) {
  return fragment == Fragment::Basic ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"};
}

bool has_dependence(Fragment fragment) {
  return fragment == Fragment::Dependence || fragment == Fragment::GroupsMeet || fragment == Fragment::GroupsJoin;
}

Model agents_model(const std::vector<std::string>& names, const std::vector<GeometricObject>& objs,
                   std::map<std::string, Mask> truth) {
  std::map<std::string, GeometricObject> agents;
  for (std::size_t i = 0; i < names.size(); ++i) agents.emplace(names[i], objs[i]);
  const auto u = objs.front().universe();
  return Model(u, std::move(agents), GeometricObject::valuation(u, std::move(truth)));
}

/// Replaces the closure's witness with the first formula in enumeration
/// order that separates the two models under some valuation of p.
FormulaPtr minimise(const Model& src, const Model& tgt, Fragment fragment, std::size_t depth, FormulaPtr fallback) {
  Signature sig;
  for (const auto& [a, _] : src.agents()) sig.agents.push_back(a);
  sig.props = {"p"};
  const std::size_t n = src.size();
  for (std::size_t d = 0; d <= std::min<std::size_t>(depth, 2); ++d) {
    const auto formulas = enumerate_formulas(d, sig, fragment);
    if (formulas.size() > 20000) break;
    for (const auto& phi : formulas) {
      for (Mask s = 0; s < (Mask{1} << n); ++s) {
        const auto m = src.with_valuation(GeometricObject::valuation(src.universe(), {{"p", s}}));
        const auto fm = tgt.with_valuation(GeometricObject::valuation(tgt.universe(), {{"p", s}}));
        if (eval(m, phi) != eval(fm, phi)) return phi;
      }
    }
  }
  return fallback;
}

/// Static fragments: closure over all agent tuples and valuations of p.
std::optional<Witness> static_search(const ConcreteFunctor& f, Fragment fragment, const CheckOptions& options,
                                     std::uint64_t& checked) {
  const auto names = fragment_agents(fragment);
  const auto groups = group_terms(fragment, names);
  Rng rng(options.seed ^ 0x5eedULL);
  for (std::size_t n = 0; n <= options.max_worlds; ++n) {
    const auto u = Universe::range(n);
    const auto objs = objects_over(f.source, u, options, rng);
    std::optional<Witness> found;
    auto examine = [&](const std::vector<GeometricObject>& tuple) {
      std::vector<GeometricObject> mapped;
      for (const auto& a : tuple) mapped.push_back(apply(f, a));
      const auto m = agents_model(names, tuple, {{"p", 0}});
      const auto fm = agents_model(names, mapped, {{"p", 0}});
      std::vector<PairClosure::Modality> mods;
      std::vector<GeometricObject> gl, gr;
      for (const auto& g : groups) {
        gl.push_back(group_object(m, g));
        gr.push_back(group_object(fm, g));
        mods.push_back({semantic_functor(gl.back()).table(), semantic_functor(gr.back()).table(), g});
      }
      std::vector<PairClosure::AtomPair> atoms = {{0, 0, prop("p")},
                                                  {low_bits(n), low_bits(n), top_formula()},
                                                  {0, 0, bottom_formula()}};
      if (has_dependence(fragment)) {
        for (std::size_t i = 0; i < groups.size(); ++i) {
          for (std::size_t j = 0; j < groups.size(); ++j) {
            if (i == j) continue;
            atoms.push_back({dependence_set(gl[i], gl[j]), dependence_set(gr[i], gr[j]),
                             dependence(groups[i], groups[j])});
          }
        }
      }
      for (Mask s = 0; s < (Mask{1} << n); ++s) {
        ++checked;
        atoms[0].lhs = atoms[0].rhs = s;
        PairClosure closure(n, mods, atoms);
        if (auto phi = closure.search(options.depth)) {
          found = Witness{minimise(m, fm, fragment, options.depth, phi), m, fm, "formula closure"};
          return false;
        }
      }
      return true;
    };
    if (names.size() == 1) {
      for (const auto& a : objs) {
        if (!examine({a})) break;
      }
    } else {
      for_each_pair(objs, options, rng,
                    [&](const GeometricObject& a, const GeometricObject& b) { return examine({a, b}); });
    }
    if (found) {
      // Attach the separating valuation.
      const auto& phi = found->formula;
      for (Mask s = 0; s < (Mask{1} << n); ++s) {
        auto m = found->source.with_valuation(GeometricObject::valuation(u, {{"p", s}}));
        auto fm = found->target.with_valuation(GeometricObject::valuation(u, {{"p", s}}));
        if (eval(m, phi) != eval(fm, phi)) {
          found->source = std::move(m);
          found->target = std::move(fm);
          break;
        }
      }
      return found;
    }
  }
  return std::nullopt;
}

std::optional<Witness> compare(const FormulaPtr& phi, const Model& m, const Model& fm, std::string how) {
  if (eval(m, phi, kHarnessLimits) == eval(fm, phi, kHarnessLimits)) return std::nullopt;
  return Witness{phi, m, fm, std::move(how)};
}

std::optional<Witness> random_search(const ConcreteFunctor& f, Fragment fragment, const CheckOptions& options,
                                     std::uint64_t& checked) {
  Rng root(options.seed ^ 0xd1ceULL);
  for (std::size_t t = 0; t < options.trials; ++t) {
    Rng rng = root.derive(t);
    ModelShape shape;
    shape.agent_kinds.assign(1 + rng.below(2), f.source);
    shape.worlds = 1 + rng.below(std::max<std::size_t>(options.max_worlds, 1));
    shape.props = 2;
    if (fragment == Fragment::Product) {
      shape.product_types = 1;
      shape.max_events = 2;
    }
    const auto m = random_model(shape, rng);
    const auto fm = transform(f, m);
    const auto phi = random_formula(signature_of(m), fragment, {options.depth, 2}, rng);
    ++checked;
    if (auto w = compare(phi, m, fm, "random formula")) return w;
  }
  return std::nullopt;
}

std::optional<Witness> pal_search(const ConcreteFunctor& f, const CheckOptions& options, std::uint64_t& checked) {
  const auto phi = announce_diamond(prop("p"), box("a", prop("q")));
  Rng rng(options.seed ^ 0xa11ULL);
  for (std::size_t n = 1; n <= options.max_worlds; ++n) {
    const auto u = Universe::range(n);
    for (const auto& a : objects_over(f.source, u, options, rng)) {
      const auto fa = apply(f, a);
      for (Mask s = 0; s < (Mask{1} << n); ++s) {
        for (Mask t = 0; t < (Mask{1} << n); ++t) {
          ++checked;
          const std::map<std::string, Mask> v = {{"p", s}, {"q", t}};
          if (auto w = compare(phi, single_agent_model(a, v), single_agent_model(fa, v), "announcement witness")) {
            return w;
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> pro_search(const ConcreteFunctor& f, const CheckOptions& options, std::uint64_t& checked) {
  Rng rng(options.seed ^ 0x9a0ULL);
  // Pullback witness: events E, geometry ⊤_E, W(q) = T, preconditions p_e
  // with V(p_e) = {g(e)} and V(q) = X, so the update is the pullback along g.
  for (std::size_t n = 1; n <= options.max_worlds; ++n) {
    const auto u = Universe::range(n);
    const auto objs = objects_over(f.source, u, options, rng);
    for (std::size_t k = 1; k <= options.max_worlds; ++k) {
      std::vector<std::string> event_names;
      for (std::size_t e = 0; e < k; ++e) event_names.push_back("e" + std::to_string(e));
      const auto events = Universe::make(event_names);
      for (const auto& g : all_functions(events, u)) {
        for (const auto& a : objs) {
          const auto fa = apply(f, a);
          for (Mask t = 0; t < (Mask{1} << k); ++t) {
            ProductType type;
            type.events = events;
            type.geometry = top(f.source, events);
            type.valuation = {{"q", t}};
            std::map<std::string, Mask> v = {{"q", u->full_mask()}};
            for (std::size_t e = 0; e < k; ++e) {
              const auto pe = "p_" + event_names[e];
              type.preconditions.push_back(prop(pe));
              v[pe] = Mask{1} << g(e);
              type.valuation[pe] = events->full_mask();
            }
            const auto m = single_agent_model(a, v, {{"E", type}});
            const auto fm = transform(f, m);
            for (std::size_t e = 0; e < k; ++e) {
              ++checked;
              const auto phi = product_diamond("E", {event_names[e]}, box("a", prop("q")));
              if (auto w = compare(phi, m, fm, "pullback witness")) return w;
            }
          }
        }
      }
    }
  }

  // Meet witness: events X, geometry B, ⊤ event valuation, preconditions p_x
  // with V(p_x) = {x}, so the update is the meet of A and B.
  for (std::size_t n = 1; n <= options.max_worlds; ++n) {
    const auto u = Universe::range(n);
    std::vector<std::string> event_names;
    for (std::size_t x = 0; x < n; ++x) event_names.push_back("x" + std::to_string(x));
    const auto events = Universe::make(event_names);
    const auto objs = objects_over(f.source, u, options, rng);
    std::optional<Witness> found;
    for_each_pair(objs, options, rng, [&](const GeometricObject& a, const GeometricObject& b) {
      ProductType type;
      type.events = events;
      type.geometry = pullback(FiniteFunction(events, u, [&] {
                                 std::vector<std::size_t> id(n);
                                 for (std::size_t i = 0; i < n; ++i) id[i] = i;
                                 return id;
                               }()),
                               b);
      std::map<std::string, Mask> v;
      for (std::size_t x = 0; x < n; ++x) {
        const auto px = "p_" + event_names[x];
        type.preconditions.push_back(prop(px));
        v[px] = Mask{1} << x;
      }
      for (Mask t = 0; t < (Mask{1} << n); ++t) {
        v["q"] = t;
        const auto m = single_agent_model(a, v, {{"E", type}});
        const auto fm = transform(f, m);
        for (std::size_t y = 0; y < n; ++y) {
          ++checked;
          const auto phi = product_diamond("E", {event_names[y]}, box("a", prop("q")));
          if (auto w = compare(phi, m, fm, "meet witness")) {
            found = std::move(w);
            return false;
          }
        }
      }
      return true;
    }, 4096);
    if (found) return found;
  }

  // Empty update: [U][a]q compares the tops of the two fibres.
  const auto empty = empty_update(box("a", prop("q")));
  for (std::size_t n = 1; n <= options.max_worlds; ++n) {
    const auto u = Universe::range(n);
    const auto a = top(f.source, u);
    for (Mask t = 0; t < (Mask{1} << n); ++t) {
      ++checked;
      const std::map<std::string, Mask> v = {{"q", t}};
      if (auto w = compare(empty, single_agent_model(a, v), single_agent_model(apply(f, a), v), "empty update witness")) {
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> language_search(const ConcreteFunctor& f, Fragment fragment, const CheckOptions& options,
                                       std::uint64_t& checked) {
  switch (fragment) {
    case Fragment::Basic:
    case Fragment::Dependence:
    case Fragment::GroupsMeet:
    case Fragment::GroupsJoin:
      return static_search(f, fragment, options, checked);
    case Fragment::Announcement:
      if (auto w = static_search(f, Fragment::Basic, options, checked)) return w;
      if (auto w = pal_search(f, options, checked)) return w;
      return random_search(f, fragment, options, checked);
    case Fragment::Product:
      if (auto w = static_search(f, Fragment::Basic, options, checked)) return w;
      if (auto w = pro_search(f, options, checked)) return w;
      return random_search(f, fragment, options, checked);
  }
  return std::nullopt;
}

bool structural_verdict(const FunctorProfile& p, Fragment fragment) {
  switch (fragment) {
    case Fragment::Basic:
    case Fragment::Dependence: return p.modal;
    case Fragment::GroupsMeet: return p.modal && p.meets;
    case Fragment::GroupsJoin: return p.modal && p.joins;
    case Fragment::Announcement: return p.modal && p.injection_pullbacks;
    case Fragment::Product: return p.modal && p.pullbacks_finite_meets;
  }
  return false;
}

}  // namespace

const std::vector<ConcreteFunctor>& builtin_functors() {
  static const std::vector<ConcreteFunctor> functors = make_builtins();
  return functors;
}

const ConcreteFunctor& find_functor(std::string_view name) {
  for (const auto& f : builtin_functors()) {
    if (f.name == name) return f;
  }
  throw Error("unknown functor '" + std::string(name) + "'");
}

GeometricObject apply(const ConcreteFunctor& f, const GeometricObject& a) {
  if (a.kind() != f.source) {
    throw Error(f.name + " expects a " + std::string(to_string(f.source)) + " object, got " +
                std::string(to_string(a.kind())));
  }
  return f.object_map(a);
}

bool is_modal_on(const ConcreteFunctor& f, const GeometricObject& a) {
  return semantic_functor(a) == semantic_functor(apply(f, a));
}

Model transform(const ConcreteFunctor& f, const Model& m, std::optional<std::string> agent) {
  std::vector<std::string> chosen;
  if (agent) {
    if (m.agent(*agent).kind() != f.source) {
      throw Error("agent '" + *agent + "' is " + std::string(to_string(m.agent(*agent).kind())) + ", " + f.name +
                  " expects " + std::string(to_string(f.source)));
    }
    chosen.push_back(*agent);
  } else {
    for (const auto& [name, obj] : m.agents()) {
      if (obj.kind() == f.source) chosen.push_back(name);
    }
  }
  auto agents = m.agents();
  for (const auto& name : chosen) agents.insert_or_assign(name, apply(f, agents.at(name)));
  auto types = m.product_types();
  for (auto& [_, t] : types) {
    for (const auto& name : chosen) {
      const auto mapped = apply(f, t.geometry_for(name));
      t.agent_geometry.insert_or_assign(name, mapped);
    }
    // Agents left untouched keep the default structure explicitly.
    if (t.geometry) {
      for (const auto& [name, obj] : m.agents()) {
        if (!t.agent_geometry.count(name)) t.agent_geometry.emplace(name, *t.geometry);
      }
      t.geometry.reset();
    }
  }
  return Model(m.universe(), std::move(agents), m.valuation(), std::move(types));
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::Modal: return "modal";
    case Property::Meets: return "meets";
    case Property::Joins: return "joins";
    case Property::InjectionPullbacks: return "injection-pullbacks";
    case Property::PullbacksFiniteMeets: return "pullbacks+finite-meets";
    case Property::Language: return "language";
  }
  return "?";
}

std::optional<Property> property_from_string(std::string_view s) {
  for (auto p : {Property::Modal, Property::Meets, Property::Joins, Property::InjectionPullbacks,
                 Property::PullbacksFiniteMeets, Property::Language}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

Fragment paired_fragment(Property p) {
  switch (p) {
    case Property::Meets: return Fragment::GroupsMeet;
    case Property::Joins: return Fragment::GroupsJoin;
    case Property::InjectionPullbacks: return Fragment::Announcement;
    case Property::PullbacksFiniteMeets: return Fragment::Product;
    default: return Fragment::Basic;
  }
}

PreservationReport check_preservation(const ConcreteFunctor& f, Property property, const CheckOptions& options) {
  PreservationReport r;
  r.functor = f.name;
  r.property = property;
  if (property != Property::Language) {
    auto s = structural_check(f, property, options);
    r.preserved = s.ok;
    r.checked = s.checked;
    r.objects = std::move(s.objects);
    return r;
  }
  r.fragment = options.fragment;
  auto w = language_search(f, options.fragment, options, r.checked);
  if (w) {
    r.preserved = false;
    r.counterexample = Counterexample{print(*w->formula),
                                      w->source,
                                      w->target,
                                      eval(w->source, w->formula, kHarnessLimits),
                                      eval(w->target, w->formula, kHarnessLimits),
                                      w->how};
  }
  return r;
}

std::vector<CorrespondenceRow> correspondence(const ConcreteFunctor& f, const CheckOptions& options) {
  FunctorProfile computed;
  computed.modal = structural_check(f, Property::Modal, options).ok;
  computed.meets = structural_check(f, Property::Meets, options).ok;
  computed.joins = structural_check(f, Property::Joins, options).ok;
  computed.injection_pullbacks = structural_check(f, Property::InjectionPullbacks, options).ok;
  computed.pullbacks_finite_meets = structural_check(f, Property::PullbacksFiniteMeets, options).ok;

  std::vector<CorrespondenceRow> rows;
  for (auto fragment : {Fragment::Basic, Fragment::Dependence, Fragment::GroupsMeet, Fragment::GroupsJoin,
                        Fragment::Announcement, Fragment::Product}) {
    CheckOptions o = options;
    o.fragment = fragment;
    const auto report = check_preservation(f, Property::Language, o);
    CorrespondenceRow row{f.name, fragment, structural_verdict(computed, fragment), report.preserved, std::nullopt};
    if (report.counterexample) row.formula = report.counterexample->formula;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace modcat

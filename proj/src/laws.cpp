#include "modcat/laws.hpp"

#include <functional>
#include <map>
#include <optional>

#include "modcat/oracle.hpp"

namespace modcat {
namespace {

const std::vector<std::string>& law_props() {
  static const std::vector<std::string> props = {"p", "q"};
  return props;
}

std::span<const std::string> props_for(Kind kind) {
  if (kind == Kind::Valuation) return law_props();
  return {};
}

std::vector<Mask> payload(const GeometricObject& a) {
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence:
      return a.rows();
    case Kind::Topology:
      return a.opens();
    case Kind::Neighbourhood:
    case Kind::Cabao:
      return a.table();
    case Kind::Valuation: {
      std::vector<Mask> out;
      for (const auto& [_, m] : a.truth()) out.push_back(m);
      return out;
    }
  }
  return {};
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool subset_of(const Bits& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~o.words_[w]) != 0) return false;
    }
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits out = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= o.words_[w];
    return out;
  }
  bool operator==(const Bits&) const = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct Recorder {
  LawResult result;
  explicit Recorder(std::string name) { result.law = std::move(name); }
  void check(bool ok, const std::function<std::string()>& detail) {
    ++result.checks;
    if (!ok && result.passed) {
      result.passed = false;
      result.detail = detail();
    }
  }
};

std::size_t random_size(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.below(hi - lo + 1); }

}  // namespace

std::size_t exhaustive_size(Kind kind) { return is_table_kind(kind) ? 2 : 3; }

std::vector<LawResult> lattice_laws(Kind kind, std::size_t max_worlds) {
  Recorder order("partial order");
  Recorder glb("binary meets are greatest lower bounds");
  Recorder lub("binary joins are least upper bounds");
  Recorder bounds("top and bottom");
  Recorder families("family meets and joins");
  Recorder identity("pullback along the identity");
  const auto props = props_for(kind);

  for (std::size_t n = 0; n <= max_worlds; ++n) {
    const auto u = Universe::range(n);
    const auto objs = all_objects(kind, u, props);
    const std::size_t count = objs.size();
    std::map<std::vector<Mask>, std::size_t> index;
    for (std::size_t i = 0; i < count; ++i) index.emplace(payload(objs[i]), i);

    std::vector<Bits> up(count, Bits(count)), down(count, Bits(count));
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        if (leq(objs[i], objs[j])) {
          up[i].set(j);
          down[j].set(i);
        }
      }
    }
    auto where = [&](std::size_t i) { return describe(objs[i]); };
    for (std::size_t i = 0; i < count; ++i) {
      order.check(up[i].test(i), [&] { return "not reflexive at " + where(i); });
      for (std::size_t j = 0; j < count; ++j) {
        if (!up[i].test(j)) continue;
        order.check(i == j || !up[j].test(i), [&] { return "not antisymmetric: " + where(i) + " / " + where(j); });
        order.check(up[j].subset_of(up[i]), [&] { return "not transitive through " + where(j); });
      }
    }

    auto locate = [&](const GeometricObject& a) -> std::optional<std::size_t> {
      if (!validate(a).ok()) return std::nullopt;
      auto it = index.find(payload(a));
      if (it == index.end()) return std::nullopt;
      return it->second;
    };
    const auto id = FiniteFunction::identity(u);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        const auto m = locate(meet(objs[i], objs[j]));
        glb.check(m && down[*m] == (down[i] & down[j]),
                  [&] { return "meet of " + where(i) + " and " + where(j); });
        const auto jn = locate(join(objs[i], objs[j]));
        lub.check(jn && up[*jn] == (up[i] & up[j]),
                  [&] { return "join of " + where(i) + " and " + where(j); });
      }
      identity.check(pullback(id, objs[i]) == objs[i], [&] { return where(i); });
    }

    const auto t = locate(top(kind, u, props));
    const auto b = locate(bottom(kind, u, props));
    Bits all(count);
    for (std::size_t i = 0; i < count; ++i) all.set(i);
    bounds.check(t && down[*t] == all, [&] { return "top over " + std::to_string(n) + " worlds"; });
    bounds.check(b && up[*b] == all, [&] { return "bottom over " + std::to_string(n) + " worlds"; });

    const std::span<const GeometricObject> none;
    families.check(meet(kind, u, none, props) == top(kind, u, props), [] { return "empty meet is not top"; });
    families.check(join(kind, u, none, props) == bottom(kind, u, props), [] { return "empty join is not bottom"; });
    Rng rng(n + 17);
    for (std::size_t trial = 0; trial < 200 && count > 0; ++trial) {
      const std::vector<GeometricObject> fam = {objs[rng.below(count)], objs[rng.below(count)],
                                                objs[rng.below(count)]};
      families.check(meet(kind, u, fam) == meet(meet(fam[0], fam[1]), fam[2]),
                     [&] { return "ternary meet differs from iterated meets"; });
      families.check(join(kind, u, fam) == join(join(fam[0], fam[1]), fam[2]),
                     [&] { return "ternary join differs from iterated joins"; });
      families.check(meet(kind, u, std::span(fam.data(), 1)) == fam[0], [] { return "singleton meet"; });
    }
  }
  return {order.result, glb.result, lub.result, bounds.result, families.result, identity.result};
}

std::vector<LawResult> fibration_laws(Kind kind, std::size_t trials, std::uint64_t seed) {
  Recorder identity("pullback(id) = id");
  Recorder composes("pullback(g∘f) = pullback(f)∘pullback(g)");
  Recorder meets("pullback preserves meets");
  Recorder valid("outputs validate");
  const auto props = props_for(kind);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng(seed).derive(trial);
    const auto x = Universe::range(random_size(rng, 0, 3));
    const auto y = Universe::range(random_size(rng, 1, 3));
    const auto z = Universe::range(random_size(rng, 1, 3));
    const auto f = random_function(x, y, rng);
    const auto g = random_function(y, z, rng);
    const auto c = random_object(kind, z, rng, props);
    const auto a = random_object(kind, x, rng, props);

    identity.check(pullback(FiniteFunction::identity(z), c) == c, [&] { return describe(c); });
    const auto direct = pullback(compose(g, f), c);
    const auto staged = pullback(f, pullback(g, c));
    composes.check(direct == staged, [&] { return describe(direct) + " vs " + describe(staged); });

    std::vector<GeometricObject> family;
    const std::size_t k = rng.below(4);
    for (std::size_t i = 0; i < k; ++i) family.push_back(random_object(kind, y, rng, props));
    std::vector<GeometricObject> pulled;
    for (const auto& b : family) pulled.push_back(pullback(f, b));
    const auto lhs = pullback(f, meet(kind, y, family, props));
    const auto rhs = meet(kind, x, pulled, props);
    meets.check(lhs == rhs, [&] { return describe(lhs) + " vs " + describe(rhs); });

    for (const auto& out : {direct, lhs, pushforward(f, a), join(kind, y, family, props)}) {
      const auto report = validate(out);
      valid.check(report.ok(), [&] { return describe(out) + ": " + report.violations.front(); });
    }
  }
  return {identity.result, composes.result, meets.result, valid.result};
}

std::vector<LawResult> exhaustive_fibration_laws(Kind kind, std::size_t max_worlds) {
  Recorder composes("pullback composes (exhaustive)");
  Recorder meets("pullback preserves meets (exhaustive)");
  Recorder valid("pullbacks validate (exhaustive)");
  const auto props = props_for(kind);

  for (std::size_t k = 1; k <= max_worlds; ++k) {
    const auto z = Universe::range(k);
    const auto objs = all_objects(kind, z, props);
    for (std::size_t m = 1; m <= max_worlds; ++m) {
      const auto y = Universe::range(m);
      const auto gs = all_functions(y, z);
      for (std::size_t n = 0; n <= max_worlds; ++n) {
        const auto x = Universe::range(n);
        for (const auto& f : all_functions(x, y)) {
          for (const auto& g : gs) {
            const auto gf = compose(g, f);
            for (const auto& c : objs) {
              const auto direct = pullback(gf, c);
              composes.check(direct == pullback(f, pullback(g, c)), [&] { return describe(c); });
              valid.check(validate(direct).ok(), [&] { return describe(direct); });
            }
          }
        }
      }
    }
    // Meets: every pair and the empty family, along every map into Z.
    for (std::size_t n = 0; n <= max_worlds; ++n) {
      const auto x = Universe::range(n);
      for (const auto& f : all_functions(x, z)) {
        const std::span<const GeometricObject> none;
        meets.check(pullback(f, meet(kind, z, none, props)) == top(kind, x, props), [] { return "top"; });
        std::vector<GeometricObject> pulled;
        for (const auto& c : objs) pulled.push_back(pullback(f, c));
        for (std::size_t i = 0; i < objs.size(); ++i) {
          for (std::size_t j = i; j < objs.size(); ++j) {
            meets.check(pullback(f, meet(objs[i], objs[j])) == meet(pulled[i], pulled[j]),
                        [&] { return describe(objs[i]) + " and " + describe(objs[j]); });
          }
        }
      }
    }
  }
  return {composes.result, meets.result, valid.result};
}

std::vector<LawResult> oracle_laws(Kind kind, std::size_t trials, std::uint64_t seed) {
  Recorder lift("initial lift universal property");
  Recorder adjunction("pushforward ⊣ pullback");
  const auto props = props_for(kind);
  const std::size_t max_x = is_table_kind(kind) ? 2 : 3;

  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng(seed).derive(trial);
    OracleOptions options;
    options.seed = rng.next();
    options.samples = is_table_kind(kind) ? 60 : 200;

    const auto x = Universe::range(random_size(rng, 0, max_x));
    Source source;
    std::vector<GeometricObject> pulled;
    const std::size_t k = rng.below(4);
    for (std::size_t i = 0; i < k; ++i) {
      const auto y = Universe::range(random_size(rng, 1, max_x));
      auto f = random_function(x, y, rng);
      auto a = random_object(kind, y, rng, props);
      pulled.push_back(pullback(f, a));
      source.emplace_back(std::move(f), std::move(a));
    }
    const auto candidate = meet(kind, x, pulled, props);
    lift.check(verify_initial_lift(kind, x, source, candidate, options),
               [&] { return "candidate " + describe(candidate); });

    const auto y = Universe::range(random_size(rng, 1, max_x));
    const auto f = random_function(x, y, rng);
    adjunction.check(verify_adjunction(kind, f, options, props), [&] {
      std::string g;
      for (auto v : f.graph()) g += std::to_string(v) + " ";
      return "f = [ " + g + "] into " + std::to_string(y->size()) + " worlds";
    });
  }
  return {lift.result, adjunction.result};
}

std::vector<LawResult> gating_suite(Kind kind, std::size_t trials, std::uint64_t seed) {
  std::vector<LawResult> out;
  auto stage = [&](std::vector<LawResult> results) {
    bool ok = true;
    for (auto& r : results) {
      ok = ok && r.passed;
      out.push_back(std::move(r));
    }
    return ok;
  };
  if (!stage(lattice_laws(kind, exhaustive_size(kind)))) return out;
  if (!stage(fibration_laws(kind, trials, seed))) return out;
  stage(oracle_laws(kind, trials, seed));
  return out;
}

}  // namespace modcat

#include "doctest.h"

#include "modcat/evaluator.hpp"
#include "modcat/generators.hpp"
#include "modcat/oracle.hpp"

using namespace modcat;

namespace {

Model two_world() {
  const auto u = Universe::range(2);
  return Model(u, {{"a", top(Kind::Kripke, u)}}, GeometricObject::valuation(u, {{"p", 0b01}}));
}

Model random_kripke(Rng& rng, std::size_t max_worlds = 4) {
  ModelShape shape;
  shape.agent_kinds.assign(1 + rng.below(2), Kind::Kripke);
  shape.worlds = 1 + rng.below(max_worlds);
  return random_model(shape, rng);
}

Model random_any(Rng& rng, std::size_t max_worlds = 3) {
  ModelShape shape;
  const std::size_t agents = 1 + rng.below(2);
  for (std::size_t i = 0; i < agents; ++i) shape.agent_kinds.push_back(kModalKinds[rng.below(6)]);
  shape.worlds = 1 + rng.below(max_worlds);
  return random_model(shape, rng);
}

FormulaPtr random_static(const Model& m, Rng& rng, std::size_t depth = 2) {
  return random_formula(signature_of(m), Fragment::Basic, {depth}, rng);
}

}  // namespace

TEST_CASE("evaluator examples") {
  const auto m = two_world();
  CHECK(eval(m, parse("true")).is_full());
  CHECK(eval(m, parse("[!p][a]p")) == Subset::full(2));
  CHECK(eval(m, parse("[U][a]p")).is_empty());
  CHECK(eval(m, parse("<!p>[a]p")) == Subset::of(2, {0}));
  CHECK(eval(m, parse("[a]p")).is_empty());
  CHECK(eval(m, parse("<a>p")).is_full());
}

TEST_CASE("announcement examples") {
  const auto m = two_world();
  const auto same = announce(m, *top_formula());
  CHECK(same.universe()->names() == m.universe()->names());
  CHECK(same.agent("a").rows() == m.agent("a").rows());

  const auto one = announce(m, *prop("p"));
  REQUIRE(one.size() == 1);
  CHECK(one.universe()->name(0) == "0");
  CHECK(one.agent("a").rows() == std::vector<Mask>{1});
}

TEST_CASE("public announcements agree with world deletion") {
  Rng rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto m = random_kripke(rng);
    const auto phi = random_static(m, rng), psi = random_static(m, rng);
    CHECK(eval(m, announce_box(phi, psi)) == classical_pal_oracle(m, *phi, *psi));
  }
}

TEST_CASE("product updates agree with the classical construction") {
  Rng rng(202);
  for (int i = 0; i < 300; ++i) {
    ModelShape shape;
    shape.agent_kinds.assign(1 + rng.below(2), Kind::Kripke);
    shape.worlds = 1 + rng.below(3);
    shape.product_types = 1;
    shape.max_events = 3;
    const auto m = random_model(shape, rng);
    const auto& [name, type] = *m.product_types().begin();
    const Mask events = rng.mask(type.events->size());
    const auto psi = random_static(m, rng);
    std::vector<std::string> names;
    for_each_bit(events, [&](std::size_t e) { names.push_back(type.events->name(e)); });
    CHECK(eval(m, product_box(name, names, psi)) == classical_del_oracle(m, type, events, *psi, true));
    CHECK(eval(m, product_diamond(name, names, psi)) == classical_del_oracle(m, type, events, *psi, false));
  }
}

TEST_CASE("announcement local truth conditions") {
  Rng rng(303);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_any(rng);
    const auto phi = random_static(m, rng), psi = random_static(m, rng);
    const auto kept = eval(m, phi);
    const auto restricted = restrict(m, kept);
    const auto inner = eval(restricted, psi);
    const auto members = kept.members();
    Mask boxed = 0, dia = 0;
    for (std::size_t x = 0; x < m.size(); ++x) {
      const auto it = std::find(members.begin(), members.end(), x);
      if (it == members.end()) {
        boxed |= Mask{1} << x;
      } else if (inner.contains(static_cast<std::size_t>(it - members.begin()))) {
        boxed |= Mask{1} << x;
        dia |= Mask{1} << x;
      }
    }
    CHECK(eval(m, announce_box(phi, psi)).bits() == boxed);
    CHECK(eval(m, announce_diamond(phi, psi)).bits() == dia);
  }
}

TEST_CASE("dynamic duality") {
  Rng rng(404);
  for (int i = 0; i < 200; ++i) {
    ModelShape shape;
    shape.agent_kinds = {kModalKinds[rng.below(6)]};
    shape.worlds = 1 + rng.below(3);
    shape.product_types = 1;
    const auto m = random_model(shape, rng);
    const auto phi = random_static(m, rng), psi = random_static(m, rng);
    CHECK(eval(m, announce_diamond(phi, psi)) == eval(m, negation(announce_box(phi, negation(psi)))));
    const auto& [name, type] = *m.product_types().begin();
    const std::vector<std::string> events = {type.events->name(0)};
    CHECK(eval(m, product_diamond(name, events, psi)) ==
          eval(m, negation(product_box(name, events, negation(psi)))));
  }
}

TEST_CASE("dependence atoms ignore the valuation") {
  Rng rng(505);
  for (int i = 0; i < 100; ++i) {
    ModelShape shape;
    shape.agent_kinds = {kModalKinds[rng.below(6)], kModalKinds[rng.below(6)]};
    shape.agent_kinds[1] = shape.agent_kinds[0];
    shape.worlds = 1 + rng.below(3);
    const auto m = random_model(shape, rng);
    const auto other = m.with_valuation(random_object(Kind::Valuation, m.universe(), rng,
                                                      std::vector<std::string>{"p", "q"}));
    for (const char* text : {"K(a, b)", "K(b, a)", "K(D{a,b}, a)", "K(a, C{a,b})"}) {
      CHECK(eval(m, parse(text)) == eval(other, parse(text)));
    }
  }
}

TEST_CASE("singleton groups are the agent") {
  Rng rng(606);
  for (int i = 0; i < 100; ++i) {
    const auto m = random_any(rng);
    const auto psi = random_static(m, rng, 1);
    const GroupTerm c(GroupMode::Common, {"a"});
    const GroupTerm d(GroupMode::Distributive, {"a"});
    CHECK(eval(m, box(c, psi)) == eval(m, box("a", psi)));
    CHECK(eval(m, box(d, psi)) == eval(m, box("a", psi)));
  }
}

TEST_CASE("announcement is the singleton product type") {
  Rng rng(707);
  for (int i = 0; i < 200; ++i) {
    const auto m0 = random_any(rng);
    const auto phi = random_static(m0, rng), psi = random_static(m0, rng);
    const auto m = m0.with_product_type("A", announcement_type(phi, m0.agent_kinds()));
    CHECK(eval(m, announce_box(phi, psi)) == eval(m, product_box("A", {"*"}, psi)));
    CHECK(eval(m, announce_diamond(phi, psi)) == eval(m, product_diamond("A", {"*"}, psi)));
  }
}

TEST_CASE("empty update uses the top of every fibre") {
  Rng rng(808);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_any(rng);
    const auto t = empty_update(m);
    for (const auto& [name, a] : t.agents()) CHECK(a == top(a.kind(), m.universe()));
  }
}

TEST_CASE("model validation") {
  const auto u = Universe::range(2);
  const auto val = GeometricObject::valuation(u, {{"p", 1}});
  const auto bad = GeometricObject::relation(Kind::Preorder, u, {0b10, 0b10});
  CHECK_THROWS_AS(Model(u, {{"a", bad}}, val), Error);
  CHECK_THROWS_AS(Model(u, {{"U", top(Kind::Kripke, u)}}, val), Error);
  CHECK_THROWS_AS(Model(u, {{"a", top(Kind::Kripke, u)}}, GeometricObject::valuation(u, {{"true", 1}})), Error);

  ProductType t;
  t.events = Universe::make({"e"});
  t.geometry = top(Kind::Kripke, t.events);
  t.preconditions = {parse("[!p]p")};
  CHECK_THROWS_AS(Model(u, {{"a", top(Kind::Kripke, u)}}, val, {{"E", t}}), Error);
  t.preconditions = {parse("p")};
  CHECK_NOTHROW(Model(u, {{"a", top(Kind::Kripke, u)}}, val, {{"E", t}}));

  const auto m = two_world();
  CHECK_THROWS_AS(eval(m, parse("[b]p")), Error);
  CHECK_THROWS_AS(eval(m, parse("[E,{e}]p")), Error);
}

TEST_CASE("mixed kinds in a group are rejected") {
  const auto u = Universe::range(2);
  const Model m(u, {{"a", top(Kind::Kripke, u)}, {"b", top(Kind::Topology, u)}},
                GeometricObject::valuation(u, {{"p", 1}}));
  CHECK_THROWS_AS(eval(m, parse("[D{a,b}]p")), Error);
  CHECK_NOTHROW(eval(m, parse("[a]p & [b]p")));
}

TEST_CASE("universe caps") {
  const auto u = Universe::range(3);
  ProductType t;
  t.events = Universe::make({"e0", "e1", "e2", "e3", "e4", "e5"});
  t.geometry = top(Kind::Kripke, t.events);
  t.preconditions.assign(6, top_formula());
  const Model m(u, {{"a", top(Kind::Kripke, u)}}, GeometricObject::valuation(u, {{"p", 1}}), {{"E", t}});
  CHECK_THROWS_AS(eval(m, parse("[E,{e0}]p")), Error);
  CHECK_NOTHROW(eval(m, parse("[E,{e0}]p"), Limits{32, 10}));
}

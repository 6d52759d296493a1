#include "doctest.h"

#include "modcat/functors.hpp"

using namespace modcat;

namespace {

CheckOptions quick(std::size_t trials = 40) {
  CheckOptions o;
  o.trials = trials;
  o.seed = 3;
  return o;
}

}  // namespace

TEST_CASE("catalogue") {
  CHECK(builtin_functors().size() == 15);
  CHECK(find_functor("alexandroff").source == Kind::Preorder);
  CHECK(find_functor("alexandroff").target == Kind::Topology);
  CHECK_THROWS_AS(find_functor("nope"), Error);
  CHECK_THROWS_AS(apply(find_functor("alexandroff"), top(Kind::Kripke, Universe::range(2))), Error);
}

TEST_CASE("modal embeddings") {
  for (const char* name : {"include_pre_kr", "alexandroff", "specialization", "include_eqv_pre"}) {
    const auto& f = find_functor(name);
    for (std::size_t n = 0; n <= 3; ++n) {
      for (const auto& a : all_objects(f.source, Universe::range(n))) CHECK(is_modal_on(f, a));
    }
  }
  const auto t = GeometricObject::topology(Universe::range(2), {0, 1, 3});
  CHECK(is_modal_on(find_functor("specialization"), t));
  CHECK_FALSE(is_modal_on(find_functor("refl_trans_closure"),
                          GeometricObject::relation(Kind::Kripke, Universe::range(2), {0b10, 0})));
}

TEST_CASE("computed profiles match the catalogue") {
  for (const auto& f : builtin_functors()) {
    CAPTURE(f.name);
    const auto o = quick();
    CHECK(check_preservation(f, Property::Modal, o).preserved == f.expected.modal);
    CHECK(check_preservation(f, Property::Meets, o).preserved == f.expected.meets);
    CHECK(check_preservation(f, Property::Joins, o).preserved == f.expected.joins);
    CHECK(check_preservation(f, Property::InjectionPullbacks, o).preserved == f.expected.injection_pullbacks);
    CHECK(check_preservation(f, Property::PullbacksFiniteMeets, o).preserved == f.expected.pullbacks_finite_meets);
  }
}

TEST_CASE("preservation examples") {
  const auto& eqv = find_functor("include_eqv_pre");
  CHECK(check_preservation(eqv, Property::Meets, quick()).preserved);
  CHECK(check_preservation(eqv, Property::Joins, quick()).preserved);

  const auto joins = check_preservation(find_functor("include_pre_kr"), Property::Joins, quick());
  CHECK_FALSE(joins.preserved);
  CHECK(joins.objects.size() == 4);

  auto o = quick();
  o.depth = 2;
  const auto lang = check_preservation(find_functor("refl_trans_closure"), Property::Language, o);
  REQUIRE_FALSE(lang.preserved);
  REQUIRE(lang.counterexample);
  CHECK(lang.counterexample->formula == "[a]p");
  CHECK(lang.counterexample->source_truth != lang.counterexample->target_truth);
  CHECK(eval(lang.counterexample->source_model, parse("[a]p")) == lang.counterexample->source_truth);
}

TEST_CASE("product-type witnesses") {
  auto o = quick();
  o.fragment = Fragment::Product;
  const auto r = check_preservation(find_functor("preorder_to_cabao"), Property::Language, o);
  REQUIRE(r.counterexample);
  const auto& how = r.counterexample->witness;
  CHECK((how == "pullback witness" || how == "meet witness"));
  CHECK(r.counterexample->formula.rfind("<E,{", 0) == 0);
  CHECK(!r.counterexample->source_model.product_types().empty());
}

TEST_CASE("neighbourhood and cabao round trips") {
  const auto& to = find_functor("nb_to_cabao");
  const auto& from = find_functor("cabao_to_nb");
  Rng rng(4);
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto u = Universe::range(n);
    std::vector<GeometricObject> nbs, cabaos;
    if (n <= 2) {
      nbs = all_objects(Kind::Neighbourhood, u);
      cabaos = all_objects(Kind::Cabao, u);
    } else {
      for (int i = 0; i < 500; ++i) {
        nbs.push_back(random_object(Kind::Neighbourhood, u, rng));
        cabaos.push_back(random_object(Kind::Cabao, u, rng));
      }
    }
    for (const auto& a : nbs) CHECK(apply(from, apply(to, a)) == a);
    for (const auto& m : cabaos) CHECK(apply(to, apply(from, m)) == m);
  }
}

TEST_CASE("specialization after alexandroff is the identity") {
  const auto& alex = find_functor("alexandroff");
  const auto& spec = find_functor("specialization");
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& p : all_objects(Kind::Preorder, Universe::range(n))) CHECK(apply(spec, apply(alex, p)) == p);
    for (const auto& t : all_objects(Kind::Topology, Universe::range(n))) CHECK(apply(alex, apply(spec, t)) == t);
  }
}

TEST_CASE("closure functors are adjoints") {
  const auto& rtc = find_functor("refl_trans_closure");
  const auto& core = find_functor("largest_contained_eqv");
  const auto& eqc = find_functor("eqv_closure");
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto u = Universe::range(n);
    const auto preorders = all_objects(Kind::Preorder, u);
    const auto equivalences = all_objects(Kind::Equivalence, u);
    for (const auto& r : all_objects(Kind::Kripke, u)) {
      const auto c = apply(rtc, r);
      CHECK(leq(r, c.with_kind(Kind::Kripke)));
      for (const auto& p : preorders) {
        CHECK(leq(c, p) == leq(r, p.with_kind(Kind::Kripke)));
      }
    }
    for (const auto& p : preorders) {
      const auto lo = apply(core, p);
      const auto hi = apply(eqc, p);
      for (const auto& e : equivalences) {
        CHECK(leq(e, lo) == leq(e.with_kind(Kind::Preorder), p));
        CHECK(leq(hi, e) == leq(p, e.with_kind(Kind::Preorder)));
      }
    }
  }
}

TEST_CASE("transform maps agents and product types") {
  const auto u = Universe::range(2);
  ProductType t;
  t.events = Universe::make({"e0"});
  t.agent_geometry.emplace("a", top(Kind::Preorder, t.events));
  t.agent_geometry.emplace("b", top(Kind::Kripke, t.events));
  t.preconditions = {top_formula()};
  const Model m(u,
                {{"a", GeometricObject::relation(Kind::Preorder, u, {0b11, 0b10})},
                 {"b", top(Kind::Kripke, u)}},
                GeometricObject::valuation(u, {{"p", 1}}), {{"E", t}});
  const auto& alex = find_functor("alexandroff");
  const auto out = transform(alex, m);
  CHECK(out.agent("a").kind() == Kind::Topology);
  CHECK(out.agent("b").kind() == Kind::Kripke);
  const auto& type = out.product_type("E");
  CHECK(type.geometry_for("a").kind() == Kind::Topology);
  CHECK(type.geometry_for("b").kind() == Kind::Kripke);
  CHECK_THROWS_AS(transform(alex, m, std::string("b")), Error);
  CHECK(eval(out, parse("[E,{e0}][a]p")) == eval(m, parse("[E,{e0}][a]p")));
}

TEST_CASE("correspondence rows agree") {
  for (const char* name : {"include_pre_kr", "refl_trans_closure", "preorder_to_cabao", "largest_contained_eqv"}) {
    for (const auto& row : correspondence(find_functor(name), quick(20))) {
      CAPTURE(name);
      CAPTURE(to_string(row.fragment));
      CHECK(row.agrees());
      CHECK(row.formula.has_value() == !row.language);
    }
  }
}

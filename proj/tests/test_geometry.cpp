#include "doctest.h"

#include <set>

#include "modcat/generators.hpp"
#include "modcat/geometry.hpp"

using namespace modcat;

namespace {

GeometricObject rel(Kind k, std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<Mask> rows(n, 0);
  for (auto [x, y] : pairs) rows[x] |= Mask{1} << y;
  return GeometricObject::relation(k, Universe::range(n), rows);
}

GeometricObject topo(std::size_t n, std::vector<Mask> opens) {
  return GeometricObject::topology(Universe::range(n), std::move(opens));
}

// Close a family of sets under pairwise union and intersection.
std::set<Mask> lattice_closure(std::set<Mask> sets) {
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Mask> cur(sets.begin(), sets.end());
    for (auto a : cur) {
      for (auto b : cur) {
        grew |= sets.insert(a | b).second;
        grew |= sets.insert(a & b).second;
      }
    }
  }
  return sets;
}

}  // namespace

TEST_CASE("leq examples") {
  const auto a = rel(Kind::Kripke, 2, {{0, 1}});
  CHECK(leq(a, a));
  CHECK(leq(rel(Kind::Kripke, 2, {}), a));
  CHECK_FALSE(leq(a, rel(Kind::Kripke, 2, {})));
  CHECK(leq(topo(2, {0, 1, 2, 3}), topo(2, {0, 3})));
  CHECK_FALSE(leq(topo(2, {0, 3}), topo(2, {0, 1, 2, 3})));
}

TEST_CASE("meet and join examples") {
  CHECK(meet(rel(Kind::Kripke, 2, {{0, 1}}), rel(Kind::Kripke, 2, {{0, 1}, {1, 0}})) ==
        rel(Kind::Kripke, 2, {{0, 1}}));
  CHECK(join(rel(Kind::Kripke, 3, {{0, 1}}), rel(Kind::Kripke, 3, {{1, 2}})) ==
        rel(Kind::Kripke, 3, {{0, 1}, {1, 2}}));

  const auto p1 = rel(Kind::Equivalence, 3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}});
  const auto p2 = rel(Kind::Equivalence, 3, {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {2, 1}});
  CHECK(join(p1, p2) == top(Kind::Equivalence, Universe::range(3)));

  const auto t = meet(topo(3, {0, 1, 7}), topo(3, {0, 2, 7}));
  CHECK(t.opens() == std::vector<Mask>{0, 1, 2, 3, 7});

  const std::vector<GeometricObject> one = {p1};
  CHECK(meet(Kind::Equivalence, Universe::range(3), one) == p1);
  CHECK(join(Kind::Equivalence, Universe::range(3), one) == p1);
}

TEST_CASE("topology meet matches the lattice closure of both opens") {
  Rng rng(11);
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto u = Universe::range(n);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_object(Kind::Topology, u, rng);
      const auto b = random_object(Kind::Topology, u, rng);
      std::set<Mask> gen(a.opens().begin(), a.opens().end());
      gen.insert(b.opens().begin(), b.opens().end());
      const auto closed = lattice_closure(gen);
      CHECK(meet(a, b).opens() == std::vector<Mask>(closed.begin(), closed.end()));
    }
  }
}

TEST_CASE("top and bottom bound every object") {
  for (auto kind : kAllKinds) {
    const std::vector<std::string> props = {"p"};
    const auto u = Universe::range(2);
    const auto t = top(kind, u, props), b = bottom(kind, u, props);
    for (const auto& a : all_objects(kind, u, props)) {
      CHECK(leq(a, t));
      CHECK(leq(b, a));
    }
  }
}

TEST_CASE("pullback examples") {
  const auto two = Universe::range(2);
  const auto one = Universe::make({"a"});
  const FiniteFunction c(two, one, {0, 0});
  CHECK(pullback(c, GeometricObject::relation(Kind::Kripke, one, {1})) == top(Kind::Kripke, two));
  const auto b = rel(Kind::Kripke, 2, {{0, 1}});
  CHECK(pullback(FiniteFunction::identity(two), b) == b);

  const auto i = FiniteFunction::inclusion(two, Subset::of(2, {0}));
  const auto empty_table = GeometricObject::cabao(two, {0, 0, 0, 0});
  CHECK(pullback(i, empty_table).table() == std::vector<Mask>{0, 0});
}

TEST_CASE("pushforward examples") {
  const auto two = Universe::range(2);
  const auto one = Universe::make({"a"});
  const FiniteFunction c(two, one, {0, 0});
  const auto m = GeometricObject::cabao(two, {3, 3, 3, 3});
  CHECK(pushforward(c, m).table() == std::vector<Mask>{1, 1});

  const auto i = FiniteFunction::inclusion(two, Subset::of(2, {0}));
  const auto r = GeometricObject::relation(Kind::Kripke, i.domain(), {1});
  CHECK(pushforward(i, r) == rel(Kind::Kripke, 2, {{0, 0}}));

  const auto a = rel(Kind::Preorder, 2, {{0, 0}, {1, 1}});
  CHECK(pushforward(FiniteFunction::identity(two), a) == a);
}

TEST_CASE("validate") {
  CHECK(validate(rel(Kind::Preorder, 3, {{0, 0}, {1, 1}, {2, 2}})).ok());
  const auto bad = validate(rel(Kind::Preorder, 2, {{0, 1}}));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations.front().find("reflexive") != std::string::npos);

  const auto open = validate(topo(2, {0, 1, 2}));
  REQUIRE_FALSE(open.ok());
  bool whole = false, union_missing = false;
  for (const auto& v : open.violations) {
    whole |= v.find("whole universe") != std::string::npos;
    union_missing |= v.find("union") != std::string::npos;
  }
  CHECK(whole);
  CHECK(union_missing);

  CHECK_FALSE(validate(rel(Kind::Equivalence, 2, {{0, 0}, {1, 1}, {0, 1}})).ok());
  CHECK_THROWS_AS(GeometricObject::cabao(Universe::range(2), {0, 0, 0}), Error);
}

TEST_CASE("generated objects validate") {
  Rng rng(5);
  for (auto kind : kAllKinds) {
    for (std::size_t n = 0; n <= 4; ++n) {
      for (int i = 0; i < 30; ++i) {
        const std::vector<std::string> props = {"p", "q"};
        CHECK(validate(random_object(kind, Universe::range(n), rng, props)).ok());
      }
    }
  }
}

TEST_CASE("fibre sizes") {
  CHECK(fibre_size(Kind::Kripke, 2) == 16);
  CHECK(fibre_size(Kind::Preorder, 3) == 29);
  CHECK(fibre_size(Kind::Equivalence, 3) == 5);
  CHECK(fibre_size(Kind::Topology, 3) == 29);
  CHECK(fibre_size(Kind::Cabao, 2) == 256);
  for (auto kind : {Kind::Kripke, Kind::Preorder, Kind::Equivalence, Kind::Topology, Kind::Neighbourhood}) {
    CHECK(all_objects(kind, Universe::range(2)).size() == fibre_size(kind, 2));
  }
}

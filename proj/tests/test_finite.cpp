#include "doctest.h"

#include "modcat/finite.hpp"

using namespace modcat;

namespace {

FiniteFunction fn(UniverseRef d, UniverseRef c, std::vector<std::size_t> g) {
  return FiniteFunction(std::move(d), std::move(c), std::move(g));
}

}  // namespace

TEST_CASE("preimage") {
  auto two = Universe::range(2);
  auto a = Universe::make({"a"});
  CHECK(preimage(fn(two, a, {0, 0}), Subset::full(1)) == Subset::full(2));
  CHECK(preimage(FiniteFunction::identity(two), Subset::of(2, {1})) == Subset::of(2, {1}));
  auto ab = Universe::make({"a", "b"});
  auto f = fn(Universe::range(3), ab, {0, 0, 1});
  CHECK(preimage(f, Subset::of(2, {0})) == Subset::of(3, {0, 1}));
}

TEST_CASE("direct and universal images") {
  auto two = Universe::range(2);
  auto a = Universe::make({"a"});
  auto c = fn(two, a, {0, 0});
  CHECK(direct_image(c, Subset::empty(2)).is_empty());
  CHECK(direct_image(FiniteFunction::identity(two), Subset::of(2, {0})) == Subset::of(2, {0}));
  CHECK(direct_image(c, Subset::of(2, {0})) == Subset::full(1));

  CHECK(universal_image(c, Subset::full(2)) == Subset::full(1));
  CHECK(universal_image(c, Subset::of(2, {0})).is_empty());
  auto i = FiniteFunction::inclusion(two, Subset::of(2, {0}));
  CHECK(universal_image(i, Subset::empty(1)) == Subset::of(2, {1}));
}

TEST_CASE("mismatched universes are rejected") {
  auto f = FiniteFunction::identity(Universe::range(2));
  CHECK_THROWS_AS(preimage(f, Subset::full(3)), Error);
  CHECK_THROWS_AS(direct_image(f, Subset::full(1)), Error);
  CHECK_THROWS_AS(Subset::of(2, {0}) | Subset::of(3, {0}), Error);
  CHECK_THROWS_AS(Universe::make({"x", "x"}), Error);
}

TEST_CASE("image adjunctions hold exhaustively") {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      auto x = Universe::range(n), y = Universe::range(m);
      // A handful of functions per size pair, including constants.
      std::vector<std::vector<std::size_t>> graphs;
      std::vector<std::size_t> g(n);
      for (std::size_t k = 0; k < 6; ++k) {
        for (std::size_t i = 0; i < n; ++i) g[i] = (i * (k + 1) + k) % m;
        graphs.push_back(g);
      }
      for (const auto& graph : graphs) {
        auto f = fn(x, y, graph);
        for (Mask s = 0; s < (Mask{1} << n); ++s) {
          for (Mask t = 0; t < (Mask{1} << m); ++t) {
            const Subset S(n, s), T(m, t);
            CHECK(direct_image(f, S).subset_of(T) == S.subset_of(preimage(f, T)));
            CHECK(preimage(f, T).subset_of(S) == T.subset_of(universal_image(f, S)));
          }
        }
      }
    }
  }
}

TEST_CASE("universal image along an injection") {
  for (std::size_t n = 0; n <= 5; ++n) {
    auto x = Universe::range(n);
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      auto i = FiniteFunction::inclusion(x, Subset(n, s));
      CHECK(i.is_injective());
      const std::size_t k = i.domain()->size();
      for (Mask t = 0; t < (Mask{1} << k); ++t) {
        const Subset T(k, t);
        const auto image = direct_image(i, T);
        CHECK(universal_image(i, T) == (image | direct_image(i, Subset::full(k)).complement()));
      }
    }
  }
}

TEST_CASE("inclusion keeps world names") {
  auto x = Universe::make({"u", "v", "w"});
  auto i = FiniteFunction::inclusion(x, Subset::of(3, {0, 2}));
  CHECK(i.domain()->names() == std::vector<std::string>{"u", "w"});
  CHECK(i(1) == 2);
}

TEST_CASE("dependent sums") {
  auto e = Universe::make({"e0", "e1"});
  auto x = Universe::range(2);
  SUBCASE("empty fibres") {
    std::vector<Subset> fibres = {Subset::empty(2), Subset::empty(2)};
    CHECK(dependent_sum(e, x, fibres).pairs->size() == 0);
  }
  SUBCASE("one full fibre is a copy of X") {
    auto one = Universe::make({"e"});
    std::vector<Subset> fibres = {Subset::full(2)};
    auto d = dependent_sum(one, x, fibres);
    CHECK(d.pairs->size() == 2);
    CHECK(d.to_worlds.is_injective());
    CHECK(d.to_worlds.is_surjective());
  }
  SUBCASE("three pairs") {
    std::vector<Subset> fibres = {Subset::of(2, {0}), Subset::full(2)};
    auto d = dependent_sum(e, x, fibres);
    REQUIRE(d.pairs->size() == 3);
    CHECK(d.pairs->names() == std::vector<std::string>{"e0|0", "e1|0", "e1|1"});
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& name = d.pairs->name(i);
      CHECK(name.substr(0, 2) == e->name(d.to_events(i)));
      CHECK(name.substr(3) == x->name(d.to_worlds(i)));
    }
    for (std::size_t ev = 0; ev < 2; ++ev) {
      CHECK(preimage(d.to_events, Subset::singleton(2, ev)).count() == fibres[ev].count());
    }
  }
}

TEST_CASE("subset algebra") {
  const auto a = Subset::of(4, {0, 1}), b = Subset::of(4, {1, 2});
  CHECK((a | b) == Subset::of(4, {0, 1, 2}));
  CHECK((a & b) == Subset::of(4, {1}));
  CHECK((a - b) == Subset::of(4, {0}));
  CHECK(a.complement() == Subset::of(4, {2, 3}));
  CHECK(a.implies(b) == Subset::of(4, {1, 2, 3}));
  CHECK(Subset::of(4, {1}).subset_of(a));
  CHECK(a.members() == std::vector<std::size_t>{0, 1});
}

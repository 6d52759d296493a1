#include "doctest.h"

#include "modcat/generators.hpp"
#include "modcat/syntax.hpp"

using namespace modcat;

TEST_CASE("parse examples") {
  CHECK(equal(parse("[a]p -> p"), implies(box("a", prop("p")), prop("p"))));
  CHECK(equal(parse("[D{a,b}](p & q)"),
              box(GroupTerm(GroupMode::Distributive, {"a", "b"}), conj(prop("p"), prop("q")))));
  CHECK(equal(parse("<! p>[a]q"), announce_diamond(prop("p"), box("a", prop("q")))));
  CHECK(equal(parse("p -> q -> r"), implies(prop("p"), implies(prop("q"), prop("r")))));
  CHECK(equal(parse("p | q & r"), disj(prop("p"), conj(prop("q"), prop("r")))));
  CHECK(equal(parse("  [ E , { e1 , e0 } ] ~ p "), product_box("E", {"e1", "e0"}, negation(prop("p")))));
  CHECK(equal(parse("K(a, C{b,c})"), dependence(GroupTerm::agent("a"), GroupTerm(GroupMode::Common, {"b", "c"}))));
  CHECK(equal(parse("[U]true"), empty_update(top_formula())));
}

TEST_CASE("print examples") {
  CHECK(print(*prop("p")) == "p");
  CHECK(print(*conj(prop("p"), disj(prop("q"), prop("r")))) == "p & (q | r)");
  CHECK(print(*dependence(GroupTerm(GroupMode::Distributive, {"a"}), GroupTerm(GroupMode::Common, {"b", "c"}))) ==
        "K(a, C{b,c})");
  CHECK(print(*implies(implies(prop("p"), prop("q")), prop("r"))) == "(p -> q) -> r");
  CHECK(print(*announce_box(prop("p"), prop("q"))) == "[!p]q");
  CHECK(print(*product_diamond("E", {"e0", "e1"}, prop("p"))) == "<E,{e0,e1}>p");
  CHECK(print(*negation(box(GroupTerm(GroupMode::Common, {"b", "a"}), prop("p")))) == "~[C{a,b}]p");
}

TEST_CASE("parse errors") {
  for (const char* bad : {"", "p &", "[a p", "<U>p", "K(a)", "[D{}]p", "p q", "(p", "[!p q", "true(", "[E,{e0]p"}) {
    CHECK_THROWS_AS(parse(bad), ParseError);
  }
}

TEST_CASE("print and parse round trip on random formulas") {
  Signature sig;
  sig.agents = {"a", "b", "c"};
  sig.props = {"p", "q", "r"};
  sig.updates = {{"E", {"e0"}}, {"E", {"e0", "e1"}}, {"F", {"x"}}};
  const Fragment fragments[] = {Fragment::Basic,      Fragment::Dependence,   Fragment::GroupsMeet,
                                Fragment::GroupsJoin, Fragment::Announcement, Fragment::Product};
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const auto f = random_formula(sig, fragments[i % 6], {4}, rng);
    const auto text = print(*f);
    const auto back = parse(text);
    REQUIRE_MESSAGE(equal(back, f), text);
    CHECK(print(*back) == text);
  }
}

TEST_CASE("print of parse is stable up to whitespace") {
  const char* corpus[] = {"[a]p -> p",          "[D{a,b}](p & q)", "<!p>[a]q",          "~~p",
                          "K(D{a,b}, C{b,c})", "[U][a]p",         "<E,{e0}>(p | ~q)", "(p -> q) -> r"};
  for (const char* text : corpus) {
    std::string squeezed;
    for (char c : std::string(text)) {
      if (c != ' ') squeezed += c;
    }
    std::string printed;
    for (char c : print(*parse(text))) {
      if (c != ' ') printed += c;
    }
    CHECK(printed == squeezed);
  }
}

namespace {

// Formulas of exact depth d: unary constructions over depth d-1, and binary
// constructions with at least one argument at depth d-1.
std::vector<std::size_t> recount(std::size_t atoms, std::size_t unary, std::size_t binary, std::size_t depth) {
  std::vector<std::size_t> exact = {atoms};
  std::size_t upto = atoms, below = 0;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::size_t n = unary * exact.back() + binary * (upto * upto - below * below);
    below = upto;
    upto += n;
    exact.push_back(n);
  }
  return exact;
}

std::size_t total(const std::vector<std::size_t>& v) {
  std::size_t s = 0;
  for (auto x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("enumeration counts match the recurrence") {
  Signature sig;
  sig.agents = {"a"};
  sig.props = {"p"};
  CHECK(enumerate_formulas(2, sig, Fragment::Basic).size() == total(recount(3, 3, 3, 2)));
  CHECK(total(recount(3, 3, 3, 2)) == 4683);
  CHECK(enumerate_formulas(2, sig, Fragment::Announcement).size() == total(recount(3, 3, 5, 2)));

  sig.agents = {"a", "b"};
  // Dependence: 2 agents give 2 boxes, 2 diamonds and 2 K atoms.
  CHECK(enumerate_formulas(2, sig, Fragment::Dependence).size() == total(recount(5, 5, 3, 2)));
  // Group fragments: groups a, b and the pair, so 6 K atoms.
  CHECK(enumerate_formulas(1, sig, Fragment::GroupsMeet).size() == total(recount(9, 7, 3, 1)));

  sig.updates = {{"E", {"e0"}}};
  CHECK(enumerate_formulas(2, sig, Fragment::Product).size() == total(recount(3, 8, 3, 2)));
}

TEST_CASE("enumeration respects fragments") {
  Signature sig;
  sig.agents = {"a", "b"};
  sig.props = {"p"};
  const auto basic = enumerate_formulas(2, sig, Fragment::Basic);
  for (const auto& f : basic) {
    bool dep = false;
    visit(*f, [&](const Formula& s) { dep |= s.as<node::Dep>() != nullptr; });
    CHECK_FALSE(dep);
    CHECK(depth(*f) <= 2);
  }
  CHECK(print(*basic[0]) == "p");
  bool has_box = false, has_neg = false;
  for (const auto& f : enumerate_formulas(1, sig, Fragment::Basic)) {
    has_box |= print(*f) == "[a]p";
    has_neg |= print(*f) == "~p";
  }
  CHECK(has_box);
  CHECK(has_neg);
  for (const auto& f : enumerate_formulas(1, sig, Fragment::GroupsJoin)) {
    visit(*f, [&](const Formula& s) {
      if (auto m = s.as<node::Modal>(); m && !m->group.is_singleton()) CHECK(m->group.mode() == GroupMode::Common);
    });
  }
}

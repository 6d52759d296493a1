#include "doctest.h"

#include "modcat/laws.hpp"

using namespace modcat;

TEST_CASE("gating suite passes for every kind") {
  for (auto kind : kAllKinds) {
    CAPTURE(to_string(kind));
    const auto results = gating_suite(kind, 25, 7);
    CHECK(results.size() == 12);
    for (const auto& r : results) {
      CAPTURE(r.law);
      CAPTURE(r.detail);
      CHECK(r.passed);
      CHECK(r.checks > 0);
    }
  }
}

TEST_CASE("exhaustive sizes") {
  CHECK(exhaustive_size(Kind::Kripke) == 3);
  CHECK(exhaustive_size(Kind::Topology) == 3);
  CHECK(exhaustive_size(Kind::Cabao) == 2);
  CHECK(exhaustive_size(Kind::Neighbourhood) == 2);
}

#pragma once

// Gating suite for one fibre kind, run in order: lattice laws on every
// object of the small fibres, split-fibration laws on random instances,
// then the initial-lift and adjunction oracles.

#include <cstdint>
#include <string>
#include <vector>

#include "modcat/generators.hpp"

namespace modcat {

struct LawResult {
  std::string law;
  bool passed = true;
  std::uint64_t checks = 0;
  std::string detail;  // first failure
};

/// Largest universe swept exhaustively for `kind` (3, or 2 for table kinds).
std::size_t exhaustive_size(Kind kind);

/// Partial order, glb/lub of every pair, top and bottom, pullback(id) = id.
std::vector<LawResult> lattice_laws(Kind kind, std::size_t max_worlds);
/// pullback composes and preserves meets of families of size ≤ 3; outputs validate.
std::vector<LawResult> fibration_laws(Kind kind, std::size_t trials, std::uint64_t seed);
/// pullback composes, preserves binary and empty meets, and lands in valid
/// objects, for every pair of functions and every object up to `max_worlds`.
std::vector<LawResult> exhaustive_fibration_laws(Kind kind, std::size_t max_worlds);
/// verify_initial_lift on meets of pullbacks, verify_adjunction on random functions.
std::vector<LawResult> oracle_laws(Kind kind, std::size_t trials, std::uint64_t seed);

std::vector<LawResult> gating_suite(Kind kind, std::size_t trials, std::uint64_t seed);

}  // namespace modcat

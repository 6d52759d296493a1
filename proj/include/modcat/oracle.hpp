#pragma once

// Brute-force checks that do not reuse the closed forms they verify:
// morphism tests per kind, the universal property of initial lifts, the
// pushforward/pullback adjunction, and classical PAL and DEL evaluators.

#include <utility>
#include <vector>

#include "modcat/evaluator.hpp"
#include "modcat/generators.hpp"

namespace modcat {

/// Whether f : (X, A) → (Y, B) is a morphism, straight from the defining
/// condition of each category.
bool is_morphism(const FiniteFunction& f, const GeometricObject& a, const GeometricObject& b);

using Source = std::vector<std::pair<FiniteFunction, GeometricObject>>;

struct OracleOptions {
  std::size_t max_test_domain = 3;
  /// Objects over a test domain are sampled when the fibre is larger.
  std::size_t exhaustive_limit = 4096;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

/// `candidate` over X is the initial lift of the source: for every g : Z → X
/// (|Z| ≤ 3) and every B over Z, g is a morphism into the candidate iff each
/// f_i ∘ g is a morphism into A_i.
bool verify_initial_lift(Kind kind, const UniverseRef& x, const Source& source,
                         const GeometricObject& candidate, const OracleOptions& options = {});

/// pushforward(f, –) ⊣ pullback(f, –) on every pair of objects, or on a
/// sample when the fibres are large.
bool verify_adjunction(Kind kind, const FiniteFunction& f, const OracleOptions& options = {},
                       std::span<const std::string> props = {});

/// Relational model as explicit world lists; independent of GeometricObject.
struct ClassicalModel {
  std::size_t worlds = 0;
  std::map<std::string, std::vector<std::vector<bool>>> access;  // access[a][x][y]
  std::map<std::string, std::vector<bool>> truth;                // truth[p][x]
};

/// Only Kripke-family agents are accepted.
ClassicalModel to_classical(const Model& m);

/// Truth set of ψ after the world-deletion announcement of φ, box reading.
/// Formulas may use agents, Booleans and nested announcements; D groups
/// read as intersection and C groups as union (Kripke joins).
std::vector<bool> classical_eval(const ClassicalModel& m, const Formula& f);
Subset classical_pal_oracle(const Model& m, const Formula& phi, const Formula& psi);

struct ClassicalEventModel {
  std::size_t events = 0;
  std::map<std::string, std::vector<std::vector<bool>>> access;
  std::map<std::string, std::vector<bool>> truth;  // event valuation; absent means true
  std::vector<FormulaPtr> preconditions;
};

ClassicalEventModel to_classical(const ProductType& t, const Model& m);

/// Textbook product update: pairs (e, x) with x ⊨ pre(e); (e,x) R_a (e',x')
/// iff e R_a e' and x R_a x'; p holds at (e,x) iff p holds at x and at e.
/// Returns ⟦[E,S]ψ⟧ (box) or ⟦<E,S>ψ⟧ (diamond) on the original worlds.
Subset classical_del_oracle(const Model& m, const ProductType& t, Mask events, const Formula& psi, bool box = true);

}  // namespace modcat

#pragma once

// Seeded random generators and exhaustive fibre enumeration.

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "modcat/evaluator.hpp"

namespace modcat {

/// mt19937_64 with a portable bounded draw, so sequences agree across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n);
  /// True with probability num/den.
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }
  /// Uniform subset of n worlds.
  Mask mask(std::size_t n) { return next() & low_bits(n); }
  /// Independent stream keyed by `salt`.
  Rng derive(std::uint64_t salt) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Named "p", "q", "r", "s", then "p4", "p5", ...
std::vector<std::string> proposition_names(std::size_t n);
/// Named "a", "b", "c", ...
std::vector<std::string> agent_names(std::size_t n);

/// A valid object of `kind` over `u`. Valuations use `props`.
GeometricObject random_object(Kind kind, const UniverseRef& u, Rng& rng,
                              std::span<const std::string> props = {});
FiniteFunction random_function(const UniverseRef& domain, const UniverseRef& codomain, Rng& rng);

struct ModelShape {
  std::vector<Kind> agent_kinds;
  std::size_t worlds = 3;
  std::size_t props = 2;
  std::size_t product_types = 0;
  std::size_t max_events = 2;
  std::size_t precondition_depth = 1;
};

Model random_model(const ModelShape& shape, Rng& rng);
/// Event structures match each agent's kind; preconditions are static.
ProductType random_product_type(const Model& m, std::size_t events, std::size_t precondition_depth, Rng& rng);

struct FormulaShape {
  std::size_t max_depth = 3;
  /// Upper bound on announcements/updates along any branch.
  std::size_t max_dynamic_nesting = std::numeric_limits<std::size_t>::max();
};

FormulaPtr random_formula(const Signature& sig, Fragment fragment, const FormulaShape& shape, Rng& rng);

/// Signature of a model: its agents, propositions and, for the product
/// fragment, every (type, nonempty event subset).
Signature signature_of(const Model& m);

/// Number of objects in the fibre of `kind` over n worlds, saturating.
std::uint64_t fibre_size(Kind kind, std::size_t n, std::size_t props = 0);
/// Every object of the fibre; throws when it exceeds 2^20 objects.
std::vector<GeometricObject> all_objects(Kind kind, const UniverseRef& u,
                                         std::span<const std::string> props = {});
/// Every function between two universes, in lexicographic graph order.
std::vector<FiniteFunction> all_functions(const UniverseRef& domain, const UniverseRef& codomain);

}  // namespace modcat

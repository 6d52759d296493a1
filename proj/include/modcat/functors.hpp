#pragma once

// Concrete functors between the fibre kinds, and the machinery that checks
// whether they preserve structure and whether they preserve the meaning of
// each language fragment.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modcat/evaluator.hpp"
#include "modcat/generators.hpp"

namespace modcat {

/// Raw structural properties of an object map.
struct FunctorProfile {
  bool modal = false;
  bool meets = false;                // binary meets
  bool joins = false;                // binary joins
  bool injection_pullbacks = false;  // pullbacks along injections
  bool pullbacks_finite_meets = false;  // pullbacks along all maps, binary meets and top

  bool operator==(const FunctorProfile&) const = default;
};

struct ConcreteFunctor {
  std::string name;
  Kind source;
  Kind target;
  std::function<GeometricObject(const GeometricObject&)> object_map;
  FunctorProfile expected;
  std::string description;
};

const std::vector<ConcreteFunctor>& builtin_functors();
/// Throws Error for unknown names.
const ConcreteFunctor& find_functor(std::string_view name);

GeometricObject apply(const ConcreteFunctor& f, const GeometricObject& a);
bool is_modal_on(const ConcreteFunctor& f, const GeometricObject& a);

/// Maps the chosen agents (all agents of the source kind when `agent` is
/// empty) and their event structures in every product type.
Model transform(const ConcreteFunctor& f, const Model& m, std::optional<std::string> agent = std::nullopt);

enum class Property { Modal, Meets, Joins, InjectionPullbacks, PullbacksFiniteMeets, Language };

std::string_view to_string(Property p);
std::optional<Property> property_from_string(std::string_view s);

/// The fragment whose preservation corresponds to a structural property.
Fragment paired_fragment(Property p);

struct CheckOptions {
  std::size_t max_worlds = 3;
  /// Random instances added where a fibre is sampled, and random formulas
  /// for the dynamic fragments.
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  Fragment fragment = Fragment::Basic;
  std::size_t depth = 3;
};

struct Counterexample {
  std::string formula;
  Model source_model;
  Model target_model;
  Subset source_truth;
  Subset target_truth;
  std::string witness;  // how it was found
};

struct PreservationReport {
  std::string functor;
  Property property;
  std::optional<Fragment> fragment;
  bool preserved = true;
  std::uint64_t checked = 0;
  /// Structural failures: the objects involved.
  std::vector<std::string> objects;
  std::optional<Counterexample> counterexample;
};

PreservationReport check_preservation(const ConcreteFunctor& f, Property property, const CheckOptions& options = {});

struct CorrespondenceRow {
  std::string functor;
  Fragment fragment;
  bool structural = false;  // modal and the paired property
  bool language = false;
  std::optional<std::string> formula;
  bool agrees() const { return structural == language; }
};

/// Both verdicts for every pairing of one functor.
std::vector<CorrespondenceRow> correspondence(const ConcreteFunctor& f, const CheckOptions& options = {});

}  // namespace modcat

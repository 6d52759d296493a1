#pragma once

// Models, product types and the interpretation of every fragment.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modcat/geometry.hpp"
#include "modcat/operators.hpp"
#include "modcat/syntax.hpp"

namespace modcat {

/// ⟨E, B, W, {ψ_e}⟩. `geometry` is the event structure used for every agent
/// without an entry in `agent_geometry`.
struct ProductType {
  UniverseRef events;
  std::optional<GeometricObject> geometry;
  std::map<std::string, GeometricObject> agent_geometry;
  /// Event valuation; propositions it omits hold at every event.
  std::map<std::string, Mask> valuation;
  /// One static formula per event, in event order.
  std::vector<FormulaPtr> preconditions;

  /// Throws when `agent` has no event structure.
  const GeometricObject& geometry_for(const std::string& agent) const;
};

/// The singleton product type ⟨1, ⊤, ⊤, {φ}⟩ whose only event is "*".
ProductType announcement_type(const FormulaPtr& phi, const std::map<std::string, Kind>& agent_kinds);

class Model {
 public:
  Model(UniverseRef universe, std::map<std::string, GeometricObject> agents,
        GeometricObject valuation, std::map<std::string, ProductType> product_types = {});

  const UniverseRef& universe() const { return universe_; }
  std::size_t size() const { return universe_->size(); }
  const std::map<std::string, GeometricObject>& agents() const { return agents_; }
  const GeometricObject& agent(const std::string& name) const;
  const GeometricObject& valuation() const { return valuation_; }
  std::vector<std::string> propositions() const { return valuation_.propositions(); }
  const std::map<std::string, ProductType>& product_types() const { return product_types_; }
  const ProductType& product_type(const std::string& name) const;
  std::map<std::string, Kind> agent_kinds() const;

  /// Same model with one agent's object replaced (kind may change).
  Model with_agent(const std::string& name, GeometricObject obj) const;
  Model with_valuation(GeometricObject valuation) const;
  Model with_product_type(const std::string& name, ProductType type) const;

 private:
  UniverseRef universe_;
  std::map<std::string, GeometricObject> agents_;
  GeometricObject valuation_;
  std::map<std::string, ProductType> product_types_;
};

/// Throws when the model exceeds the configured caps.
void check_limits(const Model& m, const Limits& limits);

/// Combined object of a group: meet of the members for D, join for C.
GeometricObject group_object(const Model& m, const GroupTerm& g);

/// ⟦K(G,H)⟧ computed from the two group objects.
Mask dependence_set(const GeometricObject& g, const GeometricObject& h);

Subset eval(const Model& m, const Formula& f, const Limits& limits = {});
Subset eval(const Model& m, const FormulaPtr& f, const Limits& limits = {});

/// M restricted to `s`: every agent and the valuation pulled back along the
/// inclusion. World names are kept.
Model restrict(const Model& m, const Subset& s);
Model announce(const Model& m, const Formula& phi, const Limits& limits = {});
/// Every agent replaced by the top of its fibre.
Model empty_update(const Model& m);

struct ProductUpdate {
  Model model;
  DependentSum sum;
};

/// The updated model over Σ_e ⟦ψ_e⟧; worlds are named "e|x".
ProductUpdate apply_product(const Model& m, const ProductType& type, const Limits& limits = {});
ProductUpdate apply_product(const Model& m, const std::string& type, const Limits& limits = {});

/// Event names to a mask over the type's events.
Mask event_mask(const ProductType& type, const std::vector<std::string>& events);

}  // namespace modcat

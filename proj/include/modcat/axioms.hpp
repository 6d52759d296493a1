#pragma once

// The four dependence axioms, instantiated as formulas and checked by
// evaluation. Under the D reading groups are meets; under the C reading
// they are joins and Inclusion and Additivity take their dual form.

#include <string>
#include <vector>

#include "modcat/evaluator.hpp"

namespace modcat {

enum class Axiom { Inclusion, Additivity, Transitivity, Transfer };

std::string_view to_string(Axiom a);

struct AxiomInstance {
  Axiom axiom;
  GroupMode mode;
  FormulaPtr formula;
  /// Worlds where the instance fails.
  Subset counter_worlds;
  bool valid() const { return counter_worlds.is_empty(); }
};

/// Instances for the agent sets G, H, P. Inclusion is instantiated for every
/// containment among G, H, P and H∪P; Transfer once per formula in `bodies`.
std::vector<AxiomInstance> axiom_instances(const Model& m, GroupMode mode, const std::vector<std::string>& g,
                                           const std::vector<std::string>& h, const std::vector<std::string>& p,
                                           const std::vector<FormulaPtr>& bodies);

}  // namespace modcat

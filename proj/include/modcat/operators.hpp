#pragma once

// Operators on a power set, stored as full tables, and the semantic functor
// sending each geometric object to the operator that interprets the box.

#include <vector>

#include "modcat/geometry.hpp"

namespace modcat {

/// A total map ℘(X) → ℘(X), indexed by subset bitmask.
class Operator {
 public:
  Operator(UniverseRef u, std::vector<Mask> table);

  static Operator identity(const UniverseRef& u);
  static Operator constant(const UniverseRef& u, Mask value);

  const UniverseRef& universe() const { return universe_; }
  std::size_t universe_size() const { return universe_->size(); }
  const std::vector<Mask>& table() const { return table_; }
  Mask at(Mask s) const { return table_[s]; }
  Subset operator()(const Subset& s) const;

  bool operator==(const Operator& o) const {
    return same_universe(universe_, o.universe_) && table_ == o.table_;
  }

 private:
  UniverseRef universe_;
  std::vector<Mask> table_;
};

/// m_A(S) for a single S, without materialising the table.
Mask apply_modality(const GeometricObject& a, Mask s);
Subset apply_modality(const GeometricObject& a, const Subset& s);

/// The operator interpreting □ for `a`. Rejects valuations.
Operator semantic_functor(const GeometricObject& a);

/// m ⊆ n pointwise
bool pointwise_leq(const Operator& m, const Operator& n);

/// Whether leq(A, B) is reflected as m_B ⊆ m_A. Vacuously true when A ≰ B.
bool order_preserving_check(const GeometricObject& a, const GeometricObject& b);

/// Largest U with m ⊆_U n: {x : ∀S, x ∈ m(S) ⇒ x ∈ n(S)}.
Subset local_dependence_set(const Operator& m, const Operator& n);

/// (m ∘ n)(S) = m(n(S))
Operator compose(const Operator& m, const Operator& n);
bool is_monotone(const Operator& m);
bool is_idempotent(const Operator& m);

}  // namespace modcat

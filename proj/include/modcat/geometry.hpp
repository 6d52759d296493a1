#pragma once

// Geometric objects over a finite universe and the fibre structure of the
// seven concrete categories: order, meets, joins, top, bottom, pullback and
// pushforward.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modcat/finite.hpp"

namespace modcat {

enum class Kind { Kripke, Preorder, Equivalence, Topology, Neighbourhood, Cabao, Valuation };

inline constexpr Kind kAllKinds[] = {Kind::Kripke,        Kind::Preorder, Kind::Equivalence,
                                     Kind::Topology,      Kind::Neighbourhood, Kind::Cabao,
                                     Kind::Valuation};
inline constexpr Kind kModalKinds[] = {Kind::Kripke,   Kind::Preorder,      Kind::Equivalence,
                                       Kind::Topology, Kind::Neighbourhood, Kind::Cabao};

std::string_view to_string(Kind k);
std::optional<Kind> kind_from_string(std::string_view s);
/// kripke, preorder or equivalence
bool is_relational(Kind k);
/// neighbourhood or cabao: payload is a table indexed by subsets
bool is_table_kind(Kind k);

/// Largest universe a table kind may be built over.
inline constexpr std::size_t kMaxTableUniverse = 20;

/// An object of one of the concrete categories, over a fixed universe.
///
/// Payload by kind:
///  - relational: `rows()[x]` is the successor set R[x];
///  - topology: `opens()` sorted ascending, no duplicates;
///  - neighbourhood: `table()[S]` = {x : (x,S) ∈ E};
///  - cabao: `table()[S]` = m(S);
///  - valuation: `truth()` maps each proposition to its truth set.
///
/// Factories do not check kind invariants; use validate() for that.
class GeometricObject {
 public:
  static GeometricObject relation(Kind kind, UniverseRef u, std::vector<Mask> rows);
  static GeometricObject topology(UniverseRef u, std::vector<Mask> opens);
  static GeometricObject neighbourhood(UniverseRef u, std::vector<Mask> table);
  static GeometricObject cabao(UniverseRef u, std::vector<Mask> table);
  static GeometricObject valuation(UniverseRef u, std::map<std::string, Mask> truth);

  Kind kind() const { return kind_; }
  const UniverseRef& universe() const { return universe_; }
  std::size_t size() const { return universe_->size(); }

  const std::vector<Mask>& rows() const;
  const std::vector<Mask>& opens() const;
  const std::vector<Mask>& table() const;
  const std::map<std::string, Mask>& truth() const;
  std::vector<std::string> propositions() const;

  /// Same data, relabelled as another kind with the same payload shape.
  GeometricObject with_kind(Kind k) const;

  bool operator==(const GeometricObject& o) const;

 private:
  GeometricObject(Kind k, UniverseRef u) : kind_(k), universe_(std::move(u)) {}

  Kind kind_;
  UniverseRef universe_;
  std::vector<Mask> data_;
  std::map<std::string, Mask> truth_;
};

// Relation helpers on row masks.
std::vector<Mask> diagonal_rows(std::size_t n);
std::vector<Mask> reflexive_transitive_closure(std::vector<Mask> rows);
std::vector<Mask> equivalence_closure(std::vector<Mask> rows);
std::vector<Mask> converse_rows(const std::vector<Mask>& rows);

// Finite topologies are determined by the least open neighbourhood of each point.
std::vector<Mask> minimal_neighbourhoods(const std::vector<Mask>& opens, std::size_t n);
std::vector<Mask> opens_from_neighbourhoods(const std::vector<Mask>& nbhd, std::size_t n);
/// Largest open contained in `s`.
Mask interior(const std::vector<Mask>& nbhd, Mask s);

/// True iff the identity of the universe is a morphism A → B.
bool leq(const GeometricObject& a, const GeometricObject& b);

/// Greatest lower bound. An empty family yields top; for valuations the
/// proposition set of an empty family is taken from `props`.
GeometricObject meet(Kind kind, const UniverseRef& u, std::span<const GeometricObject> family,
                     std::span<const std::string> props = {});
/// Least upper bound. An empty family yields bottom.
GeometricObject join(Kind kind, const UniverseRef& u, std::span<const GeometricObject> family,
                     std::span<const std::string> props = {});
GeometricObject meet(const GeometricObject& a, const GeometricObject& b);
GeometricObject join(const GeometricObject& a, const GeometricObject& b);

GeometricObject top(Kind kind, const UniverseRef& u, std::span<const std::string> props = {});
GeometricObject bottom(Kind kind, const UniverseRef& u, std::span<const std::string> props = {});

/// f*B for f : X → Y and B over Y.
GeometricObject pullback(const FiniteFunction& f, const GeometricObject& b);
/// f_!A for f : X → Y and A over X; left adjoint of pullback.
GeometricObject pushforward(const FiniteFunction& f, const GeometricObject& a);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const GeometricObject& a);
/// Throws Error listing the violations when `a` is not a valid object.
void require_valid(const GeometricObject& a);

/// Human-readable rendering, mainly for reports and test failures.
std::string describe(const GeometricObject& a);
std::string describe_subset(const Universe& u, Mask s);

}  // namespace modcat

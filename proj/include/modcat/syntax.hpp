#pragma once

// Formula AST for the static, dependence, group, announcement and
// product-update languages; a recursive-descent parser; a minimal-parenthesis
// printer; and exhaustive formula enumeration.
//
// Concrete syntax (precedence low to high; `->` associates to the right):
//
//   φ ::= φ -> φ | φ '|' φ | φ & φ
//       | ~φ | [g]φ | <g>φ | [!φ]φ | <!φ>φ | [U]φ | [T,{e,...}]φ | <T,{e,...}>φ
//       | p | true | false | K(g, g) | (φ)
//   g ::= a | D{a,...} | C{a,...}
//
// `U`, `K`, `D`, `C`, `true` and `false` are reserved in the positions above.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modcat/finite.hpp"

namespace modcat {

enum class GroupMode { Distributive, Common };

/// A nonempty set of agents combined by fibre meet (D) or join (C).
/// Members are kept sorted; singletons are normalised to D.
class GroupTerm {
 public:
  GroupTerm(GroupMode mode, std::vector<std::string> members);
  static GroupTerm agent(std::string name) { return GroupTerm(GroupMode::Distributive, {std::move(name)}); }

  GroupMode mode() const { return mode_; }
  const std::vector<std::string>& members() const { return members_; }
  bool is_singleton() const { return members_.size() == 1; }

  bool operator==(const GroupTerm&) const = default;

 private:
  GroupMode mode_;
  std::vector<std::string> members_;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class BinaryOp { And, Or, Imp };

namespace node {
struct Prop { std::string name; };
struct Const { bool value; };
struct Not { FormulaPtr body; };
struct Binary { BinaryOp op; FormulaPtr lhs, rhs; };
struct Modal { bool box; GroupTerm group; FormulaPtr body; };
struct Dep { GroupTerm g, h; };
struct Announce { bool box; FormulaPtr announced, body; };
struct EmptyUpdate { FormulaPtr body; };
struct ProductUpdate { bool box; std::string type; std::vector<std::string> events; FormulaPtr body; };
}  // namespace node

class Formula {
 public:
  using Node = std::variant<node::Prop, node::Const, node::Not, node::Binary, node::Modal,
                            node::Dep, node::Announce, node::EmptyUpdate, node::ProductUpdate>;

  explicit Formula(Node n) : node_(std::move(n)) {}
  const Node& node() const { return node_; }

  template <typename T>
  const T* as() const { return std::get_if<T>(&node_); }

 private:
  Node node_;
};

bool operator==(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Constructors.
FormulaPtr prop(std::string name);
FormulaPtr top_formula();
FormulaPtr bottom_formula();
FormulaPtr negation(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr box(GroupTerm g, FormulaPtr f);
FormulaPtr diamond(GroupTerm g, FormulaPtr f);
FormulaPtr box(std::string agent, FormulaPtr f);
FormulaPtr diamond(std::string agent, FormulaPtr f);
FormulaPtr dependence(GroupTerm g, GroupTerm h);
FormulaPtr announce_box(FormulaPtr announced, FormulaPtr body);
FormulaPtr announce_diamond(FormulaPtr announced, FormulaPtr body);
FormulaPtr empty_update(FormulaPtr body);
FormulaPtr product_box(std::string type, std::vector<std::string> events, FormulaPtr body);
FormulaPtr product_diamond(std::string type, std::vector<std::string> events, FormulaPtr body);

/// Nesting depth; atoms have depth 0.
std::size_t depth(const Formula& f);
/// No announcements, empty updates, product updates or dependence atoms.
bool is_static(const Formula& f);
/// No announcements, empty updates or product updates.
bool is_dynamic_free(const Formula& f);
/// Calls `fn` on every subformula, pre-order.
void visit(const Formula& f, const std::function<void(const Formula&)>& fn);

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

FormulaPtr parse(std::string_view text);
std::string print(const Formula& f);
std::string print(const GroupTerm& g);

enum class Fragment {
  Basic,        // L_Σ
  Dependence,   // L^D_Σ
  GroupsMeet,   // L^D_Σl
  GroupsJoin,   // L^D_Σr
  Announcement, // L^PAL
  Product,      // L^PRO
};

std::string_view to_string(Fragment f);
std::optional<Fragment> fragment_from_string(std::string_view s);

/// Symbols available to enumerated formulas.
struct Signature {
  std::vector<std::string> agents;
  std::vector<std::string> props;
  /// Product-update modalities for the Product fragment: (type, event subset).
  std::vector<std::pair<std::string, std::vector<std::string>>> updates;
  bool constants = true;
};

/// Group terms a fragment may use: agents alone for Basic/Dependence, every
/// nonempty agent subset in the fragment's mode for the group fragments.
std::vector<GroupTerm> group_terms(Fragment fragment, const std::vector<std::string>& agents);

/// All formulas of the fragment up to `max_depth`, grouped by exact depth
/// (depth 0 first). Within a depth, unary constructions precede binary ones.
std::vector<FormulaPtr> enumerate_formulas(std::size_t max_depth, const Signature& sig,
                                           Fragment fragment);

}  // namespace modcat

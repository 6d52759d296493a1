#pragma once

// Finite sets, subsets as bitmasks, and functions between finite sets,
// together with the three quantifier images along a function.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modcat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Mask = std::uint64_t;

/// Hard ceiling imposed by the 64-bit subset representation.
inline constexpr std::size_t kMaxUniverse = 64;

/// Separator used to name the worlds of a dependent sum, "event|world".
inline constexpr char kPairSeparator = '|';

/// Configurable universe caps. Operator tables have 2^n entries, so the
/// kinds that store them get a tighter bound.
struct Limits {
  std::size_t max_worlds = 16;
  std::size_t max_table_worlds = 10;
};

inline constexpr Mask low_bits(std::size_t n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

/// Calls `fn(index)` for each set bit of `m`, lowest first.
template <typename Fn>
void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    const int i = __builtin_ctzll(m);
    fn(static_cast<std::size_t>(i));
    m &= m - 1;
  }
}

inline int popcount(Mask m) { return __builtin_popcountll(m); }

class Universe;
using UniverseRef = std::shared_ptr<const Universe>;

/// An ordered list of uniquely named worlds.
class Universe {
 public:
  explicit Universe(std::vector<std::string> worlds);

  static UniverseRef make(std::vector<std::string> worlds);
  /// Worlds named "0", "1", ..., "n-1".
  static UniverseRef range(std::size_t n);

  std::size_t size() const { return worlds_.size(); }
  const std::string& name(std::size_t i) const { return worlds_.at(i); }
  const std::vector<std::string>& names() const { return worlds_; }
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws if the world is unknown.
  std::size_t index(std::string_view name) const;
  Mask full_mask() const { return low_bits(size()); }

  bool operator==(const Universe& other) const { return worlds_ == other.worlds_; }

 private:
  std::vector<std::string> worlds_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// True when both refer to the same list of worlds.
bool same_universe(const UniverseRef& a, const UniverseRef& b);

/// A subset of a universe of known size. Equality is extensional.
class Subset {
 public:
  Subset() = default;
  Subset(std::size_t universe_size, Mask bits);

  static Subset empty(std::size_t n) { return Subset(n, 0); }
  static Subset full(std::size_t n) { return Subset(n, low_bits(n)); }
  static Subset singleton(std::size_t n, std::size_t i);
  static Subset of(std::size_t n, std::initializer_list<std::size_t> members);

  std::size_t universe_size() const { return n_; }
  Mask bits() const { return bits_; }
  bool contains(std::size_t i) const { return i < n_ && ((bits_ >> i) & 1U) != 0; }
  std::size_t count() const { return static_cast<std::size_t>(popcount(bits_)); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == low_bits(n_); }
  std::vector<std::size_t> members() const;

  Subset operator|(const Subset& o) const;
  Subset operator&(const Subset& o) const;
  Subset operator-(const Subset& o) const;
  Subset complement() const { return Subset(n_, ~bits_ & low_bits(n_)); }
  /// ¬this ∪ o
  Subset implies(const Subset& o) const;
  bool subset_of(const Subset& o) const;

  bool operator==(const Subset&) const = default;

 private:
  void require_same(const Subset& o) const;

  std::size_t n_ = 0;
  Mask bits_ = 0;
};

/// World names of the members of `s`, in universe order.
std::vector<std::string> member_names(const Universe& u, const Subset& s);
Subset subset_of_names(const Universe& u, std::span<const std::string> names);

/// A total function between two finite universes.
class FiniteFunction {
 public:
  FiniteFunction(UniverseRef domain, UniverseRef codomain, std::vector<std::size_t> graph);

  static FiniteFunction identity(const UniverseRef& u);
  /// The inclusion of `s` into `x`; the domain is a fresh universe holding
  /// the names of the members of `s`, in order.
  static FiniteFunction inclusion(const UniverseRef& x, const Subset& s);

  const UniverseRef& domain() const { return domain_; }
  const UniverseRef& codomain() const { return codomain_; }
  const std::vector<std::size_t>& graph() const { return graph_; }
  std::size_t operator()(std::size_t x) const { return graph_[x]; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_identity() const;

  /// Raw mask versions, no size checks.
  Mask preimage_mask(Mask t) const;
  Mask image_mask(Mask s) const;
  Mask universal_image_mask(Mask s) const;

 private:
  UniverseRef domain_;
  UniverseRef codomain_;
  std::vector<std::size_t> graph_;
};

/// g ∘ f
FiniteFunction compose(const FiniteFunction& g, const FiniteFunction& f);

/// f⁻¹(T) = {x : f(x) ∈ T}
Subset preimage(const FiniteFunction& f, const Subset& t);
/// ∃_f(S) = {f(x) : x ∈ S}
Subset direct_image(const FiniteFunction& f, const Subset& s);
/// ∀_f(S) = {y : f⁻¹({y}) ⊆ S}
Subset universal_image(const FiniteFunction& f, const Subset& s);

struct DependentSum {
  UniverseRef pairs;
  FiniteFunction to_events;  // π_E
  FiniteFunction to_worlds;  // π_X
};

/// Σ_{e ∈ E} fibre(e). Pairs are ordered by (event index, world index) and
/// named "e|x".
DependentSum dependent_sum(const UniverseRef& events, const UniverseRef& worlds,
                           std::span<const Subset> fibres);

}  // namespace modcat

#include "modcat/finite.hpp"

#include <algorithm>

namespace modcat {

Universe::Universe(std::vector<std::string> worlds) : worlds_(std::move(worlds)) {
  if (worlds_.size() > kMaxUniverse) {
    throw Error("universe of " + std::to_string(worlds_.size()) + " worlds exceeds the " +
                std::to_string(kMaxUniverse) + "-world representation limit");
  }
  index_.reserve(worlds_.size());
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (!index_.emplace(worlds_[i], i).second) {
      throw Error("duplicate world name '" + worlds_[i] + "'");
    }
  }
}

UniverseRef Universe::make(std::vector<std::string> worlds) {
  return std::make_shared<const Universe>(std::move(worlds));
}

UniverseRef Universe::range(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return make(std::move(names));
}

std::optional<std::size_t> Universe::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Universe::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error("unknown world '" + std::string(name) + "'");
}

bool same_universe(const UniverseRef& a, const UniverseRef& b) {
  return a == b || (a && b && *a == *b);
}

Subset::Subset(std::size_t universe_size, Mask bits) : n_(universe_size), bits_(bits) {
  if (n_ > kMaxUniverse) throw Error("subset universe too large");
  if ((bits & ~low_bits(n_)) != 0) throw Error("subset references worlds outside its universe");
}

Subset Subset::singleton(std::size_t n, std::size_t i) {
  if (i >= n) throw Error("singleton index out of range");
  return Subset(n, Mask{1} << i);
}

Subset Subset::of(std::size_t n, std::initializer_list<std::size_t> members) {
  Mask m = 0;
  for (auto i : members) {
    if (i >= n) throw Error("subset member out of range");
    m |= Mask{1} << i;
  }
  return Subset(n, m);
}

std::vector<std::size_t> Subset::members() const {
  std::vector<std::size_t> out;
  for_each_bit(bits_, [&](std::size_t i) { out.push_back(i); });
  return out;
}

void Subset::require_same(const Subset& o) const {
  if (n_ != o.n_) throw Error("subset universe mismatch");
}

Subset Subset::operator|(const Subset& o) const {
  require_same(o);
  return Subset(n_, bits_ | o.bits_);
}

Subset Subset::operator&(const Subset& o) const {
  require_same(o);
  return Subset(n_, bits_ & o.bits_);
}

Subset Subset::operator-(const Subset& o) const {
  require_same(o);
  return Subset(n_, bits_ & ~o.bits_);
}

Subset Subset::implies(const Subset& o) const {
  require_same(o);
  return Subset(n_, (~bits_ | o.bits_) & low_bits(n_));
}

bool Subset::subset_of(const Subset& o) const {
  require_same(o);
  return (bits_ & ~o.bits_) == 0;
}

std::vector<std::string> member_names(const Universe& u, const Subset& s) {
  if (s.universe_size() != u.size()) throw Error("subset universe mismatch");
  std::vector<std::string> out;
  for_each_bit(s.bits(), [&](std::size_t i) { out.push_back(u.name(i)); });
  return out;
}

Subset subset_of_names(const Universe& u, std::span<const std::string> names) {
  Mask m = 0;
  for (const auto& n : names) m |= Mask{1} << u.index(n);
  return Subset(u.size(), m);
}

FiniteFunction::FiniteFunction(UniverseRef domain, UniverseRef codomain,
                               std::vector<std::size_t> graph)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), graph_(std::move(graph)) {
  if (!domain_ || !codomain_) throw Error("function needs a domain and a codomain");
  if (graph_.size() != domain_->size()) throw Error("function graph is not total");
  for (auto y : graph_) {
    if (y >= codomain_->size()) throw Error("function value outside its codomain");
  }
}

FiniteFunction FiniteFunction::identity(const UniverseRef& u) {
  std::vector<std::size_t> g(u->size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  return FiniteFunction(u, u, std::move(g));
}

FiniteFunction FiniteFunction::inclusion(const UniverseRef& x, const Subset& s) {
  if (s.universe_size() != x->size()) throw Error("subset universe mismatch");
  std::vector<std::string> names;
  std::vector<std::size_t> g;
  for_each_bit(s.bits(), [&](std::size_t i) {
    names.push_back(x->name(i));
    g.push_back(i);
  });
  return FiniteFunction(Universe::make(std::move(names)), x, std::move(g));
}

bool FiniteFunction::is_injective() const {
  Mask seen = 0;
  for (auto y : graph_) {
    if ((seen >> y) & 1U) return false;
    seen |= Mask{1} << y;
  }
  return true;
}

bool FiniteFunction::is_surjective() const {
  Mask seen = 0;
  for (auto y : graph_) seen |= Mask{1} << y;
  return seen == codomain_->full_mask();
}

bool FiniteFunction::is_identity() const {
  if (!same_universe(domain_, codomain_)) return false;
  for (std::size_t i = 0; i < graph_.size(); ++i) {
    if (graph_[i] != i) return false;
  }
  return true;
}

Mask FiniteFunction::preimage_mask(Mask t) const {
  Mask out = 0;
  for (std::size_t x = 0; x < graph_.size(); ++x) {
    if ((t >> graph_[x]) & 1U) out |= Mask{1} << x;
  }
  return out;
}

Mask FiniteFunction::image_mask(Mask s) const {
  Mask out = 0;
  for_each_bit(s, [&](std::size_t x) { out |= Mask{1} << graph_[x]; });
  return out;
}

Mask FiniteFunction::universal_image_mask(Mask s) const {
  // y fails exactly when some x ∉ S maps to it.
  Mask bad = 0;
  for (std::size_t x = 0; x < graph_.size(); ++x) {
    if (((s >> x) & 1U) == 0) bad |= Mask{1} << graph_[x];
  }
  return codomain_->full_mask() & ~bad;
}

FiniteFunction compose(const FiniteFunction& g, const FiniteFunction& f) {
  if (!same_universe(f.codomain(), g.domain())) throw Error("functions are not composable");
  std::vector<std::size_t> graph(f.graph().size());
  for (std::size_t x = 0; x < graph.size(); ++x) graph[x] = g(f(x));
  return FiniteFunction(f.domain(), g.codomain(), std::move(graph));
}

Subset preimage(const FiniteFunction& f, const Subset& t) {
  if (t.universe_size() != f.codomain()->size()) throw Error("preimage: universe mismatch");
  return Subset(f.domain()->size(), f.preimage_mask(t.bits()));
}

Subset direct_image(const FiniteFunction& f, const Subset& s) {
  if (s.universe_size() != f.domain()->size()) throw Error("direct image: universe mismatch");
  return Subset(f.codomain()->size(), f.image_mask(s.bits()));
}

Subset universal_image(const FiniteFunction& f, const Subset& s) {
  if (s.universe_size() != f.domain()->size()) throw Error("universal image: universe mismatch");
  return Subset(f.codomain()->size(), f.universal_image_mask(s.bits()));
}

DependentSum dependent_sum(const UniverseRef& events, const UniverseRef& worlds,
                           std::span<const Subset> fibres) {
  if (fibres.size() != events->size()) throw Error("dependent sum needs one fibre per event");
  std::vector<std::string> names;
  std::vector<std::size_t> to_e;
  std::vector<std::size_t> to_x;
  for (std::size_t e = 0; e < fibres.size(); ++e) {
    if (fibres[e].universe_size() != worlds->size()) {
      throw Error("dependent sum: fibre over the wrong universe");
    }
    for_each_bit(fibres[e].bits(), [&](std::size_t x) {
      names.push_back(events->name(e) + kPairSeparator + worlds->name(x));
      to_e.push_back(e);
      to_x.push_back(x);
    });
  }
  auto pairs = Universe::make(std::move(names));
  return DependentSum{pairs, FiniteFunction(pairs, events, std::move(to_e)),
                      FiniteFunction(pairs, worlds, std::move(to_x))};
}

}  // namespace modcat

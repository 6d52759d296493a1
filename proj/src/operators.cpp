#include "modcat/operators.hpp"

namespace modcat {
namespace {

void require_same(const Operator& m, const Operator& n) {
  if (!same_universe(m.universe(), n.universe())) throw Error("operator universe mismatch");
}

}  // namespace

Operator::Operator(UniverseRef u, std::vector<Mask> table)
    : universe_(std::move(u)), table_(std::move(table)) {
  if (universe_->size() > kMaxTableUniverse) throw Error("operator universe too large");
  if (table_.size() != (std::size_t{1} << universe_->size())) throw Error("operator table is not total");
  for (auto t : table_) {
    if ((t & ~universe_->full_mask()) != 0) throw Error("operator value outside its universe");
  }
}

Operator Operator::identity(const UniverseRef& u) {
  std::vector<Mask> t(std::size_t{1} << u->size());
  for (std::size_t s = 0; s < t.size(); ++s) t[s] = s;
  return Operator(u, std::move(t));
}

Operator Operator::constant(const UniverseRef& u, Mask value) {
  return Operator(u, std::vector<Mask>(std::size_t{1} << u->size(), value));
}

Subset Operator::operator()(const Subset& s) const {
  if (s.universe_size() != universe_size()) throw Error("operator applied to a foreign subset");
  return Subset(universe_size(), table_[s.bits()]);
}

Mask apply_modality(const GeometricObject& a, Mask s) {
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      Mask out = 0;
      const auto& rows = a.rows();
      for (std::size_t x = 0; x < rows.size(); ++x) {
        if ((rows[x] & ~s) == 0) out |= Mask{1} << x;
      }
      return out;
    }
    case Kind::Topology:
      return interior(minimal_neighbourhoods(a.opens(), a.size()), s);
    case Kind::Neighbourhood:
    case Kind::Cabao:
      return a.table()[s];
    case Kind::Valuation:
      break;
  }
  throw Error("valuations do not interpret modalities");
}

Subset apply_modality(const GeometricObject& a, const Subset& s) {
  if (s.universe_size() != a.size()) throw Error("modality applied to a foreign subset");
  return Subset(a.size(), apply_modality(a, s.bits()));
}

Operator semantic_functor(const GeometricObject& a) {
  if (a.kind() == Kind::Valuation) throw Error("valuations have no semantic operator");
  if (is_table_kind(a.kind())) return Operator(a.universe(), a.table());
  const std::size_t n = a.size();
  if (n > kMaxTableUniverse) throw Error("universe too large for an operator table");
  std::vector<Mask> t(std::size_t{1} << n);
  if (a.kind() == Kind::Topology) {
    const auto nb = minimal_neighbourhoods(a.opens(), n);
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = interior(nb, s);
  } else {
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = apply_modality(a, Mask{s});
  }
  return Operator(a.universe(), std::move(t));
}

bool pointwise_leq(const Operator& m, const Operator& n) {
  require_same(m, n);
  for (std::size_t s = 0; s < m.table().size(); ++s) {
    if ((m.table()[s] & ~n.table()[s]) != 0) return false;
  }
  return true;
}

bool order_preserving_check(const GeometricObject& a, const GeometricObject& b) {
  if (!leq(a, b)) return true;
  return pointwise_leq(semantic_functor(b), semantic_functor(a));
}

Subset local_dependence_set(const Operator& m, const Operator& n) {
  require_same(m, n);
  Mask bad = 0;
  for (std::size_t s = 0; s < m.table().size(); ++s) bad |= m.table()[s] & ~n.table()[s];
  const std::size_t size = m.universe_size();
  return Subset(size, low_bits(size) & ~bad);
}

Operator compose(const Operator& m, const Operator& n) {
  require_same(m, n);
  std::vector<Mask> t(n.table().size());
  for (std::size_t s = 0; s < t.size(); ++s) t[s] = m.table()[n.table()[s]];
  return Operator(m.universe(), std::move(t));
}

bool is_monotone(const Operator& m) {
  // Checking single-element extensions suffices.
  const auto& t = m.table();
  const std::size_t n = m.universe_size();
  for (std::size_t s = 0; s < t.size(); ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bigger = s | (std::size_t{1} << i);
      if ((t[s] & ~t[bigger]) != 0) return false;
    }
  }
  return true;
}

bool is_idempotent(const Operator& m) {
  const auto& t = m.table();
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (t[t[s]] != t[s]) return false;
  }
  return true;
}

}  // namespace modcat

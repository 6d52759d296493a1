#include "modcat/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace modcat {
namespace {

constexpr std::size_t kMaxReportedViolations = 16;

std::size_t table_size(std::size_t n) {
  if (n > kMaxTableUniverse) {
    throw Error("operator tables over " + std::to_string(n) + " worlds are not supported (max " +
                std::to_string(kMaxTableUniverse) + ")");
  }
  return std::size_t{1} << n;
}

void require_kind(const GeometricObject& a, Kind k) {
  if (a.kind() != k) throw Error("kind mismatch");
}

void require_compatible(const GeometricObject& a, const GeometricObject& b) {
  if (a.kind() != b.kind()) {
    throw Error("kind mismatch: " + std::string(to_string(a.kind())) + " vs " +
                std::string(to_string(b.kind())));
  }
  if (!same_universe(a.universe(), b.universe())) throw Error("universe mismatch");
  if (a.kind() == Kind::Valuation) {
    auto ia = a.truth().begin();
    auto ib = b.truth().begin();
    if (a.truth().size() != b.truth().size()) throw Error("valuation proposition sets differ");
    for (; ia != a.truth().end(); ++ia, ++ib) {
      if (ia->first != ib->first) throw Error("valuation proposition sets differ");
    }
  }
}

std::vector<Mask> sorted_unique(std::vector<Mask> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::string> props_of_family(std::span<const GeometricObject> family,
                                         std::span<const std::string> props) {
  if (!family.empty()) return family.front().propositions();
  return {props.begin(), props.end()};
}

GeometricObject make_like(Kind kind, const UniverseRef& u, std::vector<Mask> data) {
  switch (kind) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence:
      return GeometricObject::relation(kind, u, std::move(data));
    case Kind::Topology:
      return GeometricObject::topology(u, std::move(data));
    case Kind::Neighbourhood:
      return GeometricObject::neighbourhood(u, std::move(data));
    case Kind::Cabao:
      return GeometricObject::cabao(u, std::move(data));
    case Kind::Valuation:
      break;
  }
  throw Error("make_like: valuation has no mask payload");
}

}  // namespace

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Kripke: return "kripke";
    case Kind::Preorder: return "preorder";
    case Kind::Equivalence: return "equivalence";
    case Kind::Topology: return "topology";
    case Kind::Neighbourhood: return "neighbourhood";
    case Kind::Cabao: return "cabao";
    case Kind::Valuation: return "valuation";
  }
  return "?";
}

std::optional<Kind> kind_from_string(std::string_view s) {
  for (auto k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

bool is_relational(Kind k) {
  return k == Kind::Kripke || k == Kind::Preorder || k == Kind::Equivalence;
}

bool is_table_kind(Kind k) { return k == Kind::Neighbourhood || k == Kind::Cabao; }

// ---------------------------------------------------------------------------
// GeometricObject

GeometricObject GeometricObject::relation(Kind kind, UniverseRef u, std::vector<Mask> rows) {
  if (!is_relational(kind)) throw Error("relation payload needs a relational kind");
  if (rows.size() != u->size()) throw Error("relation needs one row per world");
  for (auto r : rows) {
    if ((r & ~u->full_mask()) != 0) throw Error("relation mentions worlds outside its universe");
  }
  GeometricObject g(kind, std::move(u));
  g.data_ = std::move(rows);
  return g;
}

GeometricObject GeometricObject::topology(UniverseRef u, std::vector<Mask> opens) {
  for (auto o : opens) {
    if ((o & ~u->full_mask()) != 0) throw Error("open set mentions worlds outside its universe");
  }
  GeometricObject g(Kind::Topology, std::move(u));
  g.data_ = sorted_unique(std::move(opens));
  return g;
}

GeometricObject GeometricObject::neighbourhood(UniverseRef u, std::vector<Mask> table) {
  GeometricObject g = cabao(std::move(u), std::move(table));
  g.kind_ = Kind::Neighbourhood;
  return g;
}

GeometricObject GeometricObject::cabao(UniverseRef u, std::vector<Mask> table) {
  if (table.size() != table_size(u->size())) {
    throw Error("operator table must have one entry per subset (" +
                std::to_string(table_size(u->size())) + "), got " + std::to_string(table.size()));
  }
  for (auto t : table) {
    if ((t & ~u->full_mask()) != 0) throw Error("operator table mentions worlds outside its universe");
  }
  GeometricObject g(Kind::Cabao, std::move(u));
  g.data_ = std::move(table);
  return g;
}

GeometricObject GeometricObject::valuation(UniverseRef u, std::map<std::string, Mask> truth) {
  for (const auto& [p, m] : truth) {
    if ((m & ~u->full_mask()) != 0) {
      throw Error("valuation of '" + p + "' mentions worlds outside its universe");
    }
  }
  GeometricObject g(Kind::Valuation, std::move(u));
  g.truth_ = std::move(truth);
  return g;
}

const std::vector<Mask>& GeometricObject::rows() const {
  if (!is_relational(kind_)) throw Error("not a relational object");
  return data_;
}

const std::vector<Mask>& GeometricObject::opens() const {
  require_kind(*this, Kind::Topology);
  return data_;
}

const std::vector<Mask>& GeometricObject::table() const {
  if (!is_table_kind(kind_)) throw Error("not a table object");
  return data_;
}

const std::map<std::string, Mask>& GeometricObject::truth() const {
  require_kind(*this, Kind::Valuation);
  return truth_;
}

std::vector<std::string> GeometricObject::propositions() const {
  std::vector<std::string> out;
  for (const auto& [p, m] : truth_) out.push_back(p);
  return out;
}

GeometricObject GeometricObject::with_kind(Kind k) const {
  const bool ok = (is_relational(kind_) && is_relational(k)) ||
                  (is_table_kind(kind_) && is_table_kind(k)) || k == kind_;
  if (!ok) throw Error("with_kind: payload shapes differ");
  GeometricObject g = *this;
  g.kind_ = k;
  return g;
}

bool GeometricObject::operator==(const GeometricObject& o) const {
  return kind_ == o.kind_ && same_universe(universe_, o.universe_) && data_ == o.data_ &&
         truth_ == o.truth_;
}

// ---------------------------------------------------------------------------
// Relation and topology helpers

std::vector<Mask> diagonal_rows(std::size_t n) {
  std::vector<Mask> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = Mask{1} << i;
  return rows;
}

std::vector<Mask> reflexive_transitive_closure(std::vector<Mask> rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) rows[i] |= Mask{1} << i;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((rows[i] >> k) & 1U) rows[i] |= rows[k];
    }
  }
  return rows;
}

std::vector<Mask> converse_rows(const std::vector<Mask>& rows) {
  std::vector<Mask> out(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for_each_bit(rows[i], [&](std::size_t j) { out[j] |= Mask{1} << i; });
  }
  return out;
}

std::vector<Mask> equivalence_closure(std::vector<Mask> rows) {
  auto conv = converse_rows(rows);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] |= conv[i];
  return reflexive_transitive_closure(std::move(rows));
}

std::vector<Mask> minimal_neighbourhoods(const std::vector<Mask>& opens, std::size_t n) {
  std::vector<Mask> nb(n, low_bits(n));
  for (auto o : opens) {
    for_each_bit(o, [&](std::size_t x) { nb[x] &= o; });
  }
  return nb;
}

std::vector<Mask> opens_from_neighbourhoods(const std::vector<Mask>& nbhd, std::size_t n) {
  if (n > kMaxTableUniverse) throw Error("topology universe too large to enumerate");
  std::vector<Mask> out;
  const Mask end = Mask{1} << n;
  for (Mask s = 0; s < end; ++s) {
    if (interior(nbhd, s) == s) out.push_back(s);
  }
  return out;
}

Mask interior(const std::vector<Mask>& nbhd, Mask s) {
  Mask out = 0;
  for_each_bit(s, [&](std::size_t x) {
    if ((nbhd[x] & ~s) == 0) out |= Mask{1} << x;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Fibre order and lattice operations

bool leq(const GeometricObject& a, const GeometricObject& b) {
  require_compatible(a, b);
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      const auto& ra = a.rows();
      const auto& rb = b.rows();
      for (std::size_t i = 0; i < ra.size(); ++i) {
        if ((ra[i] & ~rb[i]) != 0) return false;
      }
      return true;
    }
    case Kind::Topology:
      return std::includes(a.opens().begin(), a.opens().end(), b.opens().begin(),
                           b.opens().end());
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      const auto& ta = a.table();
      const auto& tb = b.table();
      for (std::size_t s = 0; s < ta.size(); ++s) {
        if ((tb[s] & ~ta[s]) != 0) return false;
      }
      return true;
    }
    case Kind::Valuation: {
      auto ib = b.truth().begin();
      for (const auto& [p, m] : a.truth()) {
        if ((m & ~ib->second) != 0) return false;
        ++ib;
      }
      return true;
    }
  }
  return false;
}

GeometricObject top(Kind kind, const UniverseRef& u, std::span<const std::string> props) {
  const std::size_t n = u->size();
  const Mask full = u->full_mask();
  switch (kind) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence:
      return GeometricObject::relation(kind, u, std::vector<Mask>(n, full));
    case Kind::Topology:
      return GeometricObject::topology(u, {Mask{0}, full});
    case Kind::Neighbourhood:
    case Kind::Cabao:
      return make_like(kind, u, std::vector<Mask>(table_size(n), 0));
    case Kind::Valuation: {
      std::map<std::string, Mask> t;
      for (const auto& p : props) t[p] = full;
      return GeometricObject::valuation(u, std::move(t));
    }
  }
  throw Error("top: unknown kind");
}

GeometricObject bottom(Kind kind, const UniverseRef& u, std::span<const std::string> props) {
  const std::size_t n = u->size();
  const Mask full = u->full_mask();
  switch (kind) {
    case Kind::Kripke:
      return GeometricObject::relation(kind, u, std::vector<Mask>(n, 0));
    case Kind::Preorder:
    case Kind::Equivalence:
      return GeometricObject::relation(kind, u, diagonal_rows(n));
    case Kind::Topology: {
      std::vector<Mask> all(table_size(n));
      for (std::size_t s = 0; s < all.size(); ++s) all[s] = s;
      return GeometricObject::topology(u, std::move(all));
    }
    case Kind::Neighbourhood:
    case Kind::Cabao:
      return make_like(kind, u, std::vector<Mask>(table_size(n), full));
    case Kind::Valuation: {
      std::map<std::string, Mask> t;
      for (const auto& p : props) t[p] = 0;
      return GeometricObject::valuation(u, std::move(t));
    }
  }
  throw Error("bottom: unknown kind");
}

GeometricObject meet(Kind kind, const UniverseRef& u, std::span<const GeometricObject> family,
                     std::span<const std::string> props) {
  for (const auto& a : family) {
    if (a.kind() != kind || !same_universe(a.universe(), u)) throw Error("meet: family mismatch");
    require_compatible(family.front(), a);
  }
  auto result = top(kind, u, props_of_family(family, props));
  if (family.empty()) return result;
  const std::size_t n = u->size();
  switch (kind) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      std::vector<Mask> rows(n, u->full_mask());
      for (const auto& a : family) {
        for (std::size_t i = 0; i < n; ++i) rows[i] &= a.rows()[i];
      }
      return GeometricObject::relation(kind, u, std::move(rows));
    }
    case Kind::Topology: {
      // Generated topology: least neighbourhoods intersect.
      std::vector<Mask> nb(n, u->full_mask());
      for (const auto& a : family) {
        auto na = minimal_neighbourhoods(a.opens(), n);
        for (std::size_t i = 0; i < n; ++i) nb[i] &= na[i];
      }
      return GeometricObject::topology(u, opens_from_neighbourhoods(nb, n));
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      std::vector<Mask> t(table_size(n), 0);
      for (const auto& a : family) {
        for (std::size_t s = 0; s < t.size(); ++s) t[s] |= a.table()[s];
      }
      return make_like(kind, u, std::move(t));
    }
    case Kind::Valuation: {
      auto t = family.front().truth();
      for (const auto& a : family) {
        for (auto& [p, m] : t) m &= a.truth().at(p);
      }
      return GeometricObject::valuation(u, std::move(t));
    }
  }
  return result;
}

GeometricObject join(Kind kind, const UniverseRef& u, std::span<const GeometricObject> family,
                     std::span<const std::string> props) {
  for (const auto& a : family) {
    if (a.kind() != kind || !same_universe(a.universe(), u)) throw Error("join: family mismatch");
    require_compatible(family.front(), a);
  }
  auto result = bottom(kind, u, props_of_family(family, props));
  if (family.empty()) return result;
  const std::size_t n = u->size();
  switch (kind) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      std::vector<Mask> rows(n, 0);
      for (const auto& a : family) {
        for (std::size_t i = 0; i < n; ++i) rows[i] |= a.rows()[i];
      }
      if (kind == Kind::Preorder) rows = reflexive_transitive_closure(std::move(rows));
      if (kind == Kind::Equivalence) rows = equivalence_closure(std::move(rows));
      return GeometricObject::relation(kind, u, std::move(rows));
    }
    case Kind::Topology: {
      std::vector<Mask> opens = family.front().opens();
      for (const auto& a : family.subspan(1)) {
        std::vector<Mask> next;
        std::set_intersection(opens.begin(), opens.end(), a.opens().begin(), a.opens().end(),
                              std::back_inserter(next));
        opens = std::move(next);
      }
      return GeometricObject::topology(u, std::move(opens));
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      std::vector<Mask> t(table_size(n), u->full_mask());
      for (const auto& a : family) {
        for (std::size_t s = 0; s < t.size(); ++s) t[s] &= a.table()[s];
      }
      return make_like(kind, u, std::move(t));
    }
    case Kind::Valuation: {
      auto t = family.front().truth();
      for (const auto& a : family) {
        for (auto& [p, m] : t) m |= a.truth().at(p);
      }
      return GeometricObject::valuation(u, std::move(t));
    }
  }
  return result;
}

GeometricObject meet(const GeometricObject& a, const GeometricObject& b) {
  const GeometricObject family[] = {a, b};
  return meet(a.kind(), a.universe(), family);
}

GeometricObject join(const GeometricObject& a, const GeometricObject& b) {
  const GeometricObject family[] = {a, b};
  return join(a.kind(), a.universe(), family);
}

// ---------------------------------------------------------------------------
// Pullback and pushforward

GeometricObject pullback(const FiniteFunction& f, const GeometricObject& b) {
  if (!same_universe(f.codomain(), b.universe())) throw Error("pullback: universe mismatch");
  const auto& x = f.domain();
  const std::size_t n = x->size();
  switch (b.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      std::vector<Mask> rows(n);
      for (std::size_t i = 0; i < n; ++i) rows[i] = f.preimage_mask(b.rows()[f(i)]);
      return GeometricObject::relation(b.kind(), x, std::move(rows));
    }
    case Kind::Topology: {
      std::vector<Mask> opens;
      opens.reserve(b.opens().size());
      for (auto v : b.opens()) opens.push_back(f.preimage_mask(v));
      return GeometricObject::topology(x, std::move(opens));
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      // (f*n)(U) = ∪ { f⁻¹(n(V)) : f⁻¹(V) = U }
      std::vector<Mask> t(table_size(n), 0);
      const auto& bt = b.table();
      for (std::size_t v = 0; v < bt.size(); ++v) {
        t[f.preimage_mask(v)] |= f.preimage_mask(bt[v]);
      }
      return make_like(b.kind(), x, std::move(t));
    }
    case Kind::Valuation: {
      std::map<std::string, Mask> t;
      for (const auto& [p, m] : b.truth()) t[p] = f.preimage_mask(m);
      return GeometricObject::valuation(x, std::move(t));
    }
  }
  throw Error("pullback: unknown kind");
}

GeometricObject pushforward(const FiniteFunction& f, const GeometricObject& a) {
  if (!same_universe(f.domain(), a.universe())) throw Error("pushforward: universe mismatch");
  const auto& y = f.codomain();
  const std::size_t m = y->size();
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      std::vector<Mask> rows(m, 0);
      for (std::size_t i = 0; i < a.rows().size(); ++i) rows[f(i)] |= f.image_mask(a.rows()[i]);
      if (a.kind() == Kind::Preorder) rows = reflexive_transitive_closure(std::move(rows));
      if (a.kind() == Kind::Equivalence) rows = equivalence_closure(std::move(rows));
      return GeometricObject::relation(a.kind(), y, std::move(rows));
    }
    case Kind::Topology: {
      const auto nb = minimal_neighbourhoods(a.opens(), a.size());
      std::vector<Mask> opens;
      const Mask end = table_size(m);
      for (Mask v = 0; v < end; ++v) {
        const Mask u = f.preimage_mask(v);
        if (interior(nb, u) == u) opens.push_back(v);
      }
      return GeometricObject::topology(y, std::move(opens));
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      // V ↦ ∀_f(m(f⁻¹V))
      std::vector<Mask> t(table_size(m));
      for (std::size_t v = 0; v < t.size(); ++v) {
        t[v] = f.universal_image_mask(a.table()[f.preimage_mask(v)]);
      }
      return make_like(a.kind(), y, std::move(t));
    }
    case Kind::Valuation: {
      std::map<std::string, Mask> t;
      for (const auto& [p, v] : a.truth()) t[p] = f.image_mask(v);
      return GeometricObject::valuation(y, std::move(t));
    }
  }
  throw Error("pushforward: unknown kind");
}

// ---------------------------------------------------------------------------
// Validation and rendering

std::string describe_subset(const Universe& u, Mask s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](std::size_t i) {
    if (!first) out += ", ";
    out += i < u.size() ? u.name(i) : std::to_string(i);
    first = false;
  });
  return out + "}";
}

ValidationReport validate(const GeometricObject& a) {
  ValidationReport r;
  const auto& u = *a.universe();
  const std::size_t n = u.size();
  auto add = [&](std::string v) {
    if (r.violations.size() < kMaxReportedViolations) r.violations.push_back(std::move(v));
  };
  switch (a.kind()) {
    case Kind::Kripke:
      break;
    case Kind::Preorder:
    case Kind::Equivalence: {
      const auto& rows = a.rows();
      for (std::size_t i = 0; i < n; ++i) {
        if (((rows[i] >> i) & 1U) == 0) add("not reflexive: missing (" + u.name(i) + ", " + u.name(i) + ")");
      }
      bool reported = false;
      for (std::size_t i = 0; i < n && !reported; ++i) {
        for_each_bit(rows[i], [&](std::size_t j) {
          if (reported) return;
          const Mask missing = rows[j] & ~rows[i];
          if (missing != 0) {
            const auto k = static_cast<std::size_t>(__builtin_ctzll(missing));
            add("not transitive: (" + u.name(i) + ", " + u.name(j) + ") and (" + u.name(j) +
                ", " + u.name(k) + ") but not (" + u.name(i) + ", " + u.name(k) + ")");
            reported = true;
          }
        });
      }
      if (a.kind() == Kind::Equivalence) {
        const auto conv = converse_rows(rows);
        for (std::size_t i = 0; i < n; ++i) {
          const Mask missing = conv[i] & ~rows[i];
          if (missing != 0) {
            const auto j = static_cast<std::size_t>(__builtin_ctzll(missing));
            add("not symmetric: (" + u.name(j) + ", " + u.name(i) + ") but not (" + u.name(i) +
                ", " + u.name(j) + ")");
            break;
          }
        }
      }
      break;
    }
    case Kind::Topology: {
      const auto& opens = a.opens();
      auto has = [&](Mask s) { return std::binary_search(opens.begin(), opens.end(), s); };
      if (!has(0)) add("missing open: empty set");
      if (!has(u.full_mask())) add("missing open: whole universe " + describe_subset(u, u.full_mask()));
      std::vector<Mask> reported;
      auto report_once = [&](Mask s, const std::string& what) {
        if (s == 0) return;
        if (std::find(reported.begin(), reported.end(), s) != reported.end()) return;
        reported.push_back(s);
        add(what);
      };
      for (std::size_t i = 0; i < opens.size(); ++i) {
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
          const Mask un = opens[i] | opens[j];
          const Mask in = opens[i] & opens[j];
          const auto pair = describe_subset(u, opens[i]) + " and " + describe_subset(u, opens[j]);
          if (!has(un)) report_once(un, "missing open: union of " + pair);
          if (!has(in)) report_once(in, "missing open: intersection of " + pair);
        }
      }
      break;
    }
    case Kind::Neighbourhood:
    case Kind::Cabao:
      if (a.table().size() != (std::size_t{1} << n)) add("operator table is not total");
      break;
    case Kind::Valuation:
      break;
  }
  return r;
}

void require_valid(const GeometricObject& a) {
  auto r = validate(a);
  if (r.ok()) return;
  std::string msg = "invalid " + std::string(to_string(a.kind())) + " object:";
  for (const auto& v : r.violations) msg += "\n  " + v;
  throw Error(msg);
}

std::string describe(const GeometricObject& a) {
  const auto& u = *a.universe();
  std::ostringstream os;
  os << to_string(a.kind()) << " over " << describe_subset(u, u.full_mask()) << ": ";
  switch (a.kind()) {
    case Kind::Kripke:
    case Kind::Preorder:
    case Kind::Equivalence: {
      os << "{";
      bool first = true;
      for (std::size_t i = 0; i < a.rows().size(); ++i) {
        for_each_bit(a.rows()[i], [&](std::size_t j) {
          os << (first ? "" : ", ") << "(" << u.name(i) << "," << u.name(j) << ")";
          first = false;
        });
      }
      os << "}";
      break;
    }
    case Kind::Topology: {
      os << "opens {";
      for (std::size_t i = 0; i < a.opens().size(); ++i) {
        os << (i ? ", " : "") << describe_subset(u, a.opens()[i]);
      }
      os << "}";
      break;
    }
    case Kind::Neighbourhood:
    case Kind::Cabao: {
      os << "table [";
      for (std::size_t s = 0; s < a.table().size(); ++s) {
        os << (s ? ", " : "") << describe_subset(u, s) << "->" << describe_subset(u, a.table()[s]);
      }
      os << "]";
      break;
    }
    case Kind::Valuation: {
      bool first = true;
      for (const auto& [p, m] : a.truth()) {
        os << (first ? "" : ", ") << p << "=" << describe_subset(u, m);
        first = false;
      }
      break;
    }
  }
  return os.str();
}

}  // namespace modcat

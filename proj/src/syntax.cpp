#include "modcat/syntax.hpp"

#include <algorithm>
#include <cctype>

namespace modcat {

GroupTerm::GroupTerm(GroupMode mode, std::vector<std::string> members)
    : mode_(mode), members_(std::move(members)) {
  if (members_.empty()) throw Error("group term needs at least one agent");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.size() == 1) mode_ = GroupMode::Distributive;
}

// ---------------------------------------------------------------------------
// Construction and structural queries

FormulaPtr prop(std::string name) { return std::make_shared<const Formula>(node::Prop{std::move(name)}); }
FormulaPtr top_formula() { return std::make_shared<const Formula>(node::Const{true}); }
FormulaPtr bottom_formula() { return std::make_shared<const Formula>(node::Const{false}); }
FormulaPtr negation(FormulaPtr f) { return std::make_shared<const Formula>(node::Not{std::move(f)}); }

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<const Formula>(node::Binary{BinaryOp::And, std::move(a), std::move(b)});
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<const Formula>(node::Binary{BinaryOp::Or, std::move(a), std::move(b)});
}
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<const Formula>(node::Binary{BinaryOp::Imp, std::move(a), std::move(b)});
}
FormulaPtr box(GroupTerm g, FormulaPtr f) {
  return std::make_shared<const Formula>(node::Modal{true, std::move(g), std::move(f)});
}
FormulaPtr diamond(GroupTerm g, FormulaPtr f) {
  return std::make_shared<const Formula>(node::Modal{false, std::move(g), std::move(f)});
}
FormulaPtr box(std::string agent, FormulaPtr f) { return box(GroupTerm::agent(std::move(agent)), std::move(f)); }
FormulaPtr diamond(std::string agent, FormulaPtr f) {
  return diamond(GroupTerm::agent(std::move(agent)), std::move(f));
}
FormulaPtr dependence(GroupTerm g, GroupTerm h) {
  return std::make_shared<const Formula>(node::Dep{std::move(g), std::move(h)});
}
FormulaPtr announce_box(FormulaPtr announced, FormulaPtr body) {
  return std::make_shared<const Formula>(node::Announce{true, std::move(announced), std::move(body)});
}
FormulaPtr announce_diamond(FormulaPtr announced, FormulaPtr body) {
  return std::make_shared<const Formula>(node::Announce{false, std::move(announced), std::move(body)});
}
FormulaPtr empty_update(FormulaPtr body) {
  return std::make_shared<const Formula>(node::EmptyUpdate{std::move(body)});
}
FormulaPtr product_box(std::string type, std::vector<std::string> events, FormulaPtr body) {
  return std::make_shared<const Formula>(
      node::ProductUpdate{true, std::move(type), std::move(events), std::move(body)});
}
FormulaPtr product_diamond(std::string type, std::vector<std::string> events, FormulaPtr body) {
  return std::make_shared<const Formula>(
      node::ProductUpdate{false, std::move(type), std::move(events), std::move(body)});
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, node::Prop>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, node::Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, node::Not>) {
          return equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        } else if constexpr (std::is_same_v<T, node::Modal>) {
          return x.box == y.box && x.group == y.group && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, node::Dep>) {
          return x.g == y.g && x.h == y.h;
        } else if constexpr (std::is_same_v<T, node::Announce>) {
          return x.box == y.box && equal(x.announced, y.announced) && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, node::EmptyUpdate>) {
          return equal(x.body, y.body);
        } else {
          return x.box == y.box && x.type == y.type && x.events == y.events && equal(x.body, y.body);
        }
      },
      a.node());
}

void visit(const Formula& f, const std::function<void(const Formula&)>& fn) {
  fn(f);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Not> || std::is_same_v<T, node::Modal> ||
                      std::is_same_v<T, node::EmptyUpdate> || std::is_same_v<T, node::ProductUpdate>) {
          visit(*x.body, fn);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          visit(*x.lhs, fn);
          visit(*x.rhs, fn);
        } else if constexpr (std::is_same_v<T, node::Announce>) {
          visit(*x.announced, fn);
          visit(*x.body, fn);
        }
      },
      f.node());
}

std::size_t depth(const Formula& f) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Not> || std::is_same_v<T, node::Modal> ||
                      std::is_same_v<T, node::EmptyUpdate> || std::is_same_v<T, node::ProductUpdate>) {
          return 1 + depth(*x.body);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          return 1 + std::max(depth(*x.lhs), depth(*x.rhs));
        } else if constexpr (std::is_same_v<T, node::Announce>) {
          return 1 + std::max(depth(*x.announced), depth(*x.body));
        } else {
          return 0;
        }
      },
      f.node());
}

bool is_dynamic_free(const Formula& f) {
  bool ok = true;
  visit(f, [&](const Formula& g) {
    if (g.as<node::Announce>() || g.as<node::EmptyUpdate>() || g.as<node::ProductUpdate>()) ok = false;
  });
  return ok;
}

bool is_static(const Formula& f) {
  bool ok = is_dynamic_free(f);
  visit(f, [&](const Formula& g) {
    if (g.as<node::Dep>()) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(std::string message, std::size_t position)
    : Error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

enum class Tok { Ident, LParen, RParen, LBrack, RBrack, LAngle, RAngle, LBrace, RBrace, Comma,
                 Tilde, Amp, Bar, Arrow, Bang, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", i});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case '<': k = Tok::LAngle; break;
      case '>': k = Tok::RAngle; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '!': k = Tok::Bang; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  FormulaPtr parse_all() {
    auto f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  FormulaPtr implication() {
    auto lhs = disjunction();
    if (accept(Tok::Arrow)) return implies(lhs, implication());
    return lhs;
  }

  FormulaPtr disjunction() {
    auto lhs = conjunction();
    while (accept(Tok::Bar)) lhs = disj(lhs, conjunction());
    return lhs;
  }

  FormulaPtr conjunction() {
    auto lhs = unary();
    while (accept(Tok::Amp)) lhs = conj(lhs, unary());
    return lhs;
  }

  std::vector<std::string> name_set() {
    expect(Tok::LBrace, "'{'");
    std::vector<std::string> names;
    if (!accept(Tok::RBrace)) {
      do {
        names.push_back(expect(Tok::Ident, "a name").text);
      } while (accept(Tok::Comma));
      expect(Tok::RBrace, "'}'");
    }
    return names;
  }

  GroupTerm group() {
    const auto& id = expect(Tok::Ident, "an agent or group");
    if ((id.text == "D" || id.text == "C") && peek().kind == Tok::LBrace) {
      const auto at = peek().pos;
      auto members = name_set();
      if (members.empty()) throw ParseError("empty group", at);
      return GroupTerm(id.text == "D" ? GroupMode::Distributive : GroupMode::Common, std::move(members));
    }
    return GroupTerm::agent(id.text);
  }

  // After '[' or '<'; `close` is the matching closing token.
  FormulaPtr bracketed(bool is_box) {
    const Tok close = is_box ? Tok::RBrack : Tok::RAngle;
    const char* close_name = is_box ? "']'" : "'>'";
    if (accept(Tok::Bang)) {
      auto announced = implication();
      expect(close, close_name);
      auto body = unary();
      return is_box ? announce_box(announced, body) : announce_diamond(announced, body);
    }
    if (peek().kind != Tok::Ident) fail("expected an agent, group, '!', 'U' or product type");
    if (peek().text == "U" && peek(1).kind == close) {
      if (!is_box) fail("the empty update has no diamond form");
      pos_ += 2;
      return empty_update(unary());
    }
    if (peek(1).kind == Tok::Comma) {
      auto type = next().text;
      next();
      auto events = name_set();
      expect(close, close_name);
      auto body = unary();
      return is_box ? product_box(type, events, body) : product_diamond(type, events, body);
    }
    auto g = group();
    expect(close, close_name);
    auto body = unary();
    return is_box ? box(g, body) : diamond(g, body);
  }

  FormulaPtr unary() {
    if (accept(Tok::Tilde)) return negation(unary());
    if (accept(Tok::LBrack)) return bracketed(true);
    if (accept(Tok::LAngle)) return bracketed(false);
    return atom();
  }

  FormulaPtr atom() {
    if (accept(Tok::LParen)) {
      auto f = implication();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind != Tok::Ident) {
      if (peek().kind == Tok::End) fail("unexpected end of input");
      fail("unexpected '" + peek().text + "'");
    }
    const auto& id = next();
    if (id.text == "true") return top_formula();
    if (id.text == "false") return bottom_formula();
    if (id.text == "K" && peek().kind == Tok::LParen) {
      next();
      auto g = group();
      expect(Tok::Comma, "','");
      auto h = group();
      expect(Tok::RParen, "')'");
      return dependence(std::move(g), std::move(h));
    }
    return prop(id.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer.
enum Level { kImp = 1, kOr = 2, kAnd = 3, kPrefix = 4, kAtom = 5 };

Level level_of(const Formula& f) {
  if (const auto* b = f.as<node::Binary>()) {
    switch (b->op) {
      case BinaryOp::Imp: return kImp;
      case BinaryOp::Or: return kOr;
      case BinaryOp::And: return kAnd;
    }
  }
  if (f.as<node::Prop>() || f.as<node::Const>() || f.as<node::Dep>()) return kAtom;
  return kPrefix;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out;
}

void print_into(const Formula& f, int min_level, std::string& out);

void print_child(const FormulaPtr& f, int min_level, std::string& out) { print_into(*f, min_level, out); }

void print_into(const Formula& f, int min_level, std::string& out) {
  const bool parens = level_of(f) < min_level;
  if (parens) out += '(';
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Prop>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, node::Const>) {
          out += x.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, node::Not>) {
          out += '~';
          print_child(x.body, kPrefix, out);
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          switch (x.op) {
            case BinaryOp::And:
              print_child(x.lhs, kAnd, out);
              out += " & ";
              print_child(x.rhs, kAnd + 1, out);
              break;
            case BinaryOp::Or:
              print_child(x.lhs, kOr, out);
              out += " | ";
              print_child(x.rhs, kOr + 1, out);
              break;
            case BinaryOp::Imp:
              print_child(x.lhs, kImp + 1, out);
              out += " -> ";
              print_child(x.rhs, kImp, out);
              break;
          }
        } else if constexpr (std::is_same_v<T, node::Modal>) {
          out += x.box ? '[' : '<';
          out += print(x.group);
          out += x.box ? ']' : '>';
          print_child(x.body, kPrefix, out);
        } else if constexpr (std::is_same_v<T, node::Dep>) {
          out += "K(" + print(x.g) + ", " + print(x.h) + ")";
        } else if constexpr (std::is_same_v<T, node::Announce>) {
          out += x.box ? "[!" : "<!";
          print_child(x.announced, kImp, out);
          out += x.box ? ']' : '>';
          print_child(x.body, kPrefix, out);
        } else if constexpr (std::is_same_v<T, node::EmptyUpdate>) {
          out += "[U]";
          print_child(x.body, kPrefix, out);
        } else {
          out += x.box ? '[' : '<';
          out += x.type + ",{" + join_names(x.events) + "}";
          out += x.box ? ']' : '>';
          print_child(x.body, kPrefix, out);
        }
      },
      f.node());
  if (parens) out += ')';
}

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const GroupTerm& g) {
  if (g.is_singleton()) return g.members().front();
  return std::string(g.mode() == GroupMode::Distributive ? "D{" : "C{") + join_names(g.members()) + "}";
}

std::string print(const Formula& f) {
  std::string out;
  print_into(f, kImp, out);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::string_view to_string(Fragment f) {
  switch (f) {
    case Fragment::Basic: return "L";
    case Fragment::Dependence: return "LD";
    case Fragment::GroupsMeet: return "groups-meet";
    case Fragment::GroupsJoin: return "groups-join";
    case Fragment::Announcement: return "pal";
    case Fragment::Product: return "pro";
  }
  return "?";
}

std::optional<Fragment> fragment_from_string(std::string_view s) {
  for (auto f : {Fragment::Basic, Fragment::Dependence, Fragment::GroupsMeet, Fragment::GroupsJoin,
                 Fragment::Announcement, Fragment::Product}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::vector<GroupTerm> group_terms(Fragment fragment, const std::vector<std::string>& agents) {
  std::vector<GroupTerm> out;
  for (const auto& a : agents) out.push_back(GroupTerm::agent(a));
  if (fragment != Fragment::GroupsMeet && fragment != Fragment::GroupsJoin) return out;
  const auto mode = fragment == Fragment::GroupsMeet ? GroupMode::Distributive : GroupMode::Common;
  const std::size_t n = agents.size();
  if (n > 16) throw Error("too many agents to enumerate groups");
  for (std::size_t bits = 1; bits < (std::size_t{1} << n); ++bits) {
    if (popcount(bits) < 2) continue;
    std::vector<std::string> members;
    for (std::size_t i = 0; i < n; ++i) {
      if ((bits >> i) & 1U) members.push_back(agents[i]);
    }
    out.emplace_back(mode, std::move(members));
  }
  return out;
}

std::vector<FormulaPtr> enumerate_formulas(std::size_t max_depth, const Signature& sig,
                                           Fragment fragment) {
  const auto groups = group_terms(fragment, sig.agents);
  const bool with_dep = fragment == Fragment::Dependence || fragment == Fragment::GroupsMeet ||
                        fragment == Fragment::GroupsJoin;

  std::vector<FormulaPtr> all;
  for (const auto& p : sig.props) all.push_back(prop(p));
  if (sig.constants) {
    all.push_back(top_formula());
    all.push_back(bottom_formula());
  }
  if (with_dep) {
    for (const auto& g : groups) {
      for (const auto& h : groups) {
        if (!(g == h)) all.push_back(dependence(g, h));
      }
    }
  }

  std::size_t prev_begin = 0;  // first formula of exact depth d-1
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const std::size_t prev_end = all.size();
    // Unary constructions over the previous layer.
    for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(negation(all[i]));
    for (const auto& g : groups) {
      for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(box(g, all[i]));
      for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(diamond(g, all[i]));
    }
    if (fragment == Fragment::Product) {
      for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(empty_update(all[i]));
      for (const auto& [type, events] : sig.updates) {
        for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(product_box(type, events, all[i]));
        for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(product_diamond(type, events, all[i]));
      }
    }
    // Binary constructions whose deeper argument sits in the previous layer.
    using Make = FormulaPtr (*)(FormulaPtr, FormulaPtr);
    std::vector<Make> binaries = {&conj, &disj, &implies};
    if (fragment == Fragment::Announcement) {
      binaries.push_back(&announce_box);
      binaries.push_back(&announce_diamond);
    }
    for (auto make : binaries) {
      for (std::size_t i = 0; i < prev_end; ++i) {
        for (std::size_t j = 0; j < prev_end; ++j) {
          if (i < prev_begin && j < prev_begin) continue;
          all.push_back(make(all[i], all[j]));
        }
      }
    }
    prev_begin = prev_end;
  }
  return all;
}

}  // namespace modcat

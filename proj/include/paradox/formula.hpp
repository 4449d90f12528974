#pragma once

// The two-sorted ∈-language: set variables are lowercase, class variables
// uppercase. Class variables are parameters; they are never quantified.
//
//   formula := iff
//   iff     := imp ('<->' imp)*
//   imp     := or ('->' imp)?                      right-associative
//   or      := and ('or' and)*
//   and     := unary ('and' unary)*
//   unary   := 'not' unary | ('forall'|'exists') setvar unary | '(' formula ')' | atom
//   atom    := term ('in'|'notin'|'='|'!=') term
//   classterm := '{' setvar '|' formula '}'
//
// `notin` and `!=` parse to negated atoms. A class variable may not stand on
// the left of `in`. `s = C` means ext(s) = C, `C = D` is extensional equality.
//
// The evaluator has one case per connective. desugar() rewrites any formula
// into the core {∈, =, not, and, exists} with the same truth value.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "paradox/error.hpp"
#include "paradox/model.hpp"
#include "paradox/subset.hpp"

namespace paradox {

struct Term {
  bool is_class = false;
  std::string name;
  friend bool operator==(const Term&, const Term&) = default;
};

inline Term set_var(std::string name) { return Term{false, std::move(name)}; }
inline Term class_var(std::string name) { return Term{true, std::move(name)}; }

enum class FormulaKind { member, equal, not_, and_, or_, implies, iff, forall, exists };

/// Immutable AST node handle; subtrees are shared.
class Formula {
 public:
  struct Node {
    FormulaKind kind = FormulaKind::member;
    Term lhs, rhs;    // atoms
    std::string var;  // quantifiers
    std::shared_ptr<const Node> a, b;
  };

  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const { return node_->kind; }
  const Term& lhs() const { return node_->lhs; }
  const Term& rhs() const { return node_->rhs; }
  const std::string& var() const { return node_->var; }
  Formula a() const { return Formula(node_->a); }
  Formula b() const { return Formula(node_->b); }
  const std::shared_ptr<const Node>& ptr() const { return node_; }

  bool is_atom() const { return kind() == FormulaKind::member || kind() == FormulaKind::equal; }
  bool is_quantifier() const { return kind() == FormulaKind::forall || kind() == FormulaKind::exists; }
  bool is_binary() const {
    auto k = kind();
    return k == FormulaKind::and_ || k == FormulaKind::or_ || k == FormulaKind::implies || k == FormulaKind::iff;
  }

  /// Number of non-atom nodes.
  std::size_t connective_count() const {
    if (is_atom()) return 0;
    std::size_t n = 1 + a().connective_count();
    if (is_binary()) n += b().connective_count();
    return n;
  }

  friend bool operator==(const Formula& x, const Formula& y) { return same(x.node_.get(), y.node_.get()); }

 private:
  static bool same(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
      case FormulaKind::member:
      case FormulaKind::equal: return x->lhs == y->lhs && x->rhs == y->rhs;
      case FormulaKind::not_: return same(x->a.get(), y->a.get());
      case FormulaKind::forall:
      case FormulaKind::exists: return x->var == y->var && same(x->a.get(), y->a.get());
      default: return same(x->a.get(), y->a.get()) && same(x->b.get(), y->b.get());
    }
  }

  std::shared_ptr<const Node> node_;
};

namespace fm {

inline Formula node(FormulaKind k, Term l, Term r, std::string var, const Formula& a, const Formula& b) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  n->var = std::move(var);
  n->a = a.ptr();
  n->b = b.ptr();
  return Formula(std::move(n));
}

inline Formula in(Term l, Term r) {
  if (l.is_class) throw precondition_error("class variable " + l.name + " on the left of 'in'");
  return node(FormulaKind::member, std::move(l), std::move(r), {}, {}, {});
}
inline Formula in(std::string_view l, std::string_view r) {
  auto term = [](std::string_view v) {
    return Term{!v.empty() && v[0] >= 'A' && v[0] <= 'Z', std::string(v)};
  };
  return in(term(l), term(r));
}
inline Formula eq(Term l, Term r) { return node(FormulaKind::equal, std::move(l), std::move(r), {}, {}, {}); }
inline Formula eq(std::string_view l, std::string_view r) {
  auto term = [](std::string_view v) {
    return Term{!v.empty() && v[0] >= 'A' && v[0] <= 'Z', std::string(v)};
  };
  return eq(term(l), term(r));
}
inline Formula not_(const Formula& a) { return node(FormulaKind::not_, {}, {}, {}, a, {}); }
inline Formula and_(const Formula& a, const Formula& b) { return node(FormulaKind::and_, {}, {}, {}, a, b); }
inline Formula or_(const Formula& a, const Formula& b) { return node(FormulaKind::or_, {}, {}, {}, a, b); }
inline Formula implies(const Formula& a, const Formula& b) { return node(FormulaKind::implies, {}, {}, {}, a, b); }
inline Formula iff(const Formula& a, const Formula& b) { return node(FormulaKind::iff, {}, {}, {}, a, b); }
inline Formula forall(std::string v, const Formula& a) { return node(FormulaKind::forall, {}, {}, std::move(v), a, {}); }
inline Formula exists(std::string v, const Formula& a) { return node(FormulaKind::exists, {}, {}, std::move(v), a, {}); }

}  // namespace fm

/// {var | body}
struct ClassTerm {
  std::string var;
  Formula body;
  friend bool operator==(const ClassTerm&, const ClassTerm&) = default;
};

// ---- printing ---------------------------------------------------------------

inline std::string to_string(const Formula& f);

namespace detail {
inline std::string wrapped(const Formula& f) {
  return f.is_binary() ? "(" + to_string(f) + ")" : to_string(f);
}
}  // namespace detail

/// Fully determined by the AST; parse(to_string(f)) == f.
inline std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::member: return f.lhs().name + " in " + f.rhs().name;
    case FormulaKind::equal: return f.lhs().name + " = " + f.rhs().name;
    case FormulaKind::not_: {
      auto a = f.a();
      if (a.kind() == FormulaKind::member) return a.lhs().name + " notin " + a.rhs().name;
      if (a.kind() == FormulaKind::equal) return a.lhs().name + " != " + a.rhs().name;
      return "not " + detail::wrapped(a);
    }
    case FormulaKind::and_: return detail::wrapped(f.a()) + " and " + detail::wrapped(f.b());
    case FormulaKind::or_: return detail::wrapped(f.a()) + " or " + detail::wrapped(f.b());
    case FormulaKind::implies: return detail::wrapped(f.a()) + " -> " + detail::wrapped(f.b());
    case FormulaKind::iff: return detail::wrapped(f.a()) + " <-> " + detail::wrapped(f.b());
    case FormulaKind::forall: return "forall " + f.var() + " (" + to_string(f.a()) + ")";
    case FormulaKind::exists: return "exists " + f.var() + " (" + to_string(f.a()) + ")";
  }
  return {};
}

inline std::string to_string(const ClassTerm& t) { return "{ " + t.var + " | " + to_string(t.body) + " }"; }

// ---- variables --------------------------------------------------------------

namespace detail {
inline void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<Term>& out) {
  auto note = [&](const Term& t) {
    if (!t.is_class && std::find(bound.begin(), bound.end(), t.name) != bound.end()) return;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  };
  switch (f.kind()) {
    case FormulaKind::member:
    case FormulaKind::equal:
      note(f.lhs());
      note(f.rhs());
      return;
    case FormulaKind::forall:
    case FormulaKind::exists:
      bound.push_back(f.var());
      collect_free(f.a(), bound, out);
      bound.pop_back();
      return;
    case FormulaKind::not_: collect_free(f.a(), bound, out); return;
    default:
      collect_free(f.a(), bound, out);
      collect_free(f.b(), bound, out);
  }
}
}  // namespace detail

/// Free variables (set and class) in order of first occurrence.
inline std::vector<Term> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<Term> out;
  detail::collect_free(f, bound, out);
  return out;
}

inline std::vector<std::string> free_set_variables(const Formula& f) {
  std::vector<std::string> out;
  for (auto& t : free_variables(f))
    if (!t.is_class) out.push_back(t.name);
  return out;
}

inline std::vector<std::string> free_class_variables(const Formula& f) {
  std::vector<std::string> out;
  for (auto& t : free_variables(f))
    if (t.is_class) out.push_back(t.name);
  return out;
}

/// Throws input_error naming the first set variable that is neither bound nor allowed.
inline void require_scoped(const Formula& f, std::span<const std::string> allowed_free) {
  for (const auto& v : free_set_variables(f))
    if (std::find(allowed_free.begin(), allowed_free.end(), v) == allowed_free.end())
      throw input_error("unbound variable '" + v + "'");
}

// ---- parsing ----------------------------------------------------------------

namespace detail {

enum class Tok {
  end, setvar, classvar, kw_in, kw_notin, kw_not, kw_and, kw_or, kw_forall, kw_exists,
  eq, neq, arrow, darrow, lparen, rparen, lbrace, rbrace, bar
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_lower = [](char c) { return c >= 'a' && c <= 'z'; };
  auto is_upper = [](char c) { return c >= 'A' && c <= 'Z'; };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_lower(c)) {
      while (i < s.size() && (is_lower(s[i]) || is_digit(s[i]) || s[i] == '_')) ++i;
      if (i < s.size() && is_upper(s[i])) throw parse_error("set variable may not contain uppercase letters", i);
      std::string w(s.substr(start, i - start));
      static const std::map<std::string, Tok, std::less<>> keywords{
          {"in", Tok::kw_in},   {"notin", Tok::kw_notin},   {"not", Tok::kw_not},
          {"and", Tok::kw_and}, {"or", Tok::kw_or},         {"forall", Tok::kw_forall},
          {"exists", Tok::kw_exists}};
      auto it = keywords.find(w);
      out.push_back({it == keywords.end() ? Tok::setvar : it->second, std::move(w), start});
      continue;
    }
    if (is_upper(c)) {
      while (i < s.size() && (is_upper(s[i]) || is_digit(s[i]) || s[i] == '_')) ++i;
      if (i < s.size() && is_lower(s[i])) throw parse_error("class variable may not contain lowercase letters", i);
      out.push_back({Tok::classvar, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    if (starts("<->")) {
      out.push_back({Tok::darrow, "<->", start});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::arrow, "->", start});
      i += 2;
    } else if (starts("!=")) {
      out.push_back({Tok::neq, "!=", start});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '=': k = Tok::eq; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '{': k = Tok::lbrace; break;
        case '}': k = Tok::rbrace; break;
        case '|': k = Tok::bar; break;
        default: throw parse_error(std::string("unexpected character '") + c + "'", i);
      }
      out.push_back({k, std::string(1, c), start});
      ++i;
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  std::variant<Formula, ClassTerm> parse_any() {
    if (peek().kind == Tok::lbrace) {
      auto t = parse_class_term();
      expect_end();
      return t;
    }
    auto f = parse_formula();
    expect_end();
    return f;
  }

  Formula parse_formula_only() {
    auto f = parse_formula();
    expect_end();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw parse_error(what + (t.kind == Tok::end ? " at end of input" : ", found '" + t.text + "'"), t.pos);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  void expect_end() {
    if (peek().kind != Tok::end) fail("unexpected trailing input");
  }

  ClassTerm parse_class_term() {
    expect(Tok::lbrace, "'{'");
    if (peek().kind != Tok::setvar) fail("expected set variable after '{'");
    std::string var = take().text;
    expect(Tok::bar, "'|'");
    Formula body = parse_formula();
    expect(Tok::rbrace, "'}'");
    return ClassTerm{std::move(var), std::move(body)};
  }

  Formula parse_formula() { return parse_iff(); }

  Formula parse_iff() {
    Formula l = parse_imp();
    while (accept(Tok::darrow)) l = fm::iff(l, parse_imp());
    return l;
  }
  Formula parse_imp() {
    Formula l = parse_or();
    if (accept(Tok::arrow)) return fm::implies(l, parse_imp());
    return l;
  }
  Formula parse_or() {
    Formula l = parse_and();
    while (accept(Tok::kw_or)) l = fm::or_(l, parse_and());
    return l;
  }
  Formula parse_and() {
    Formula l = parse_unary();
    while (accept(Tok::kw_and)) l = fm::and_(l, parse_unary());
    return l;
  }
  Formula parse_unary() {
    if (accept(Tok::kw_not)) return fm::not_(parse_unary());
    if (peek().kind == Tok::kw_forall || peek().kind == Tok::kw_exists) {
      bool all = take().kind == Tok::kw_forall;
      if (peek().kind == Tok::classvar) fail("class variables cannot be quantified");
      if (peek().kind != Tok::setvar) fail("expected set variable after quantifier");
      std::string v = take().text;
      Formula body = parse_unary();
      return all ? fm::forall(std::move(v), body) : fm::exists(std::move(v), body);
    }
    if (accept(Tok::lparen)) {
      Formula f = parse_formula();
      expect(Tok::rparen, "')'");
      return f;
    }
    return parse_atom();
  }
  Term parse_term() {
    if (peek().kind == Tok::setvar) return set_var(take().text);
    if (peek().kind == Tok::classvar) return class_var(take().text);
    fail("expected a variable");
  }
  Formula parse_atom() {
    const std::size_t lhs_pos = peek().pos;
    Term l = parse_term();
    Tok op = peek().kind;
    if (op != Tok::kw_in && op != Tok::kw_notin && op != Tok::eq && op != Tok::neq)
      fail("expected 'in', 'notin', '=' or '!='");
    ++pos_;
    Term r = parse_term();
    if ((op == Tok::kw_in || op == Tok::kw_notin) && l.is_class)
      throw parse_error("class variable " + l.name + " cannot stand on the left of 'in'", lhs_pos);
    switch (op) {
      case Tok::kw_in: return fm::in(l, r);
      case Tok::kw_notin: return fm::not_(fm::in(l, r));
      case Tok::eq: return fm::eq(l, r);
      default: return fm::not_(fm::eq(l, r));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// A formula or a class term; class-term bodies may only have the bound set variable free.
inline std::variant<Formula, ClassTerm> parse(std::string_view text) {
  auto r = detail::Parser(text).parse_any();
  if (auto* t = std::get_if<ClassTerm>(&r)) {
    std::vector<std::string> allowed{t->var};
    require_scoped(t->body, allowed);
  }
  return r;
}

inline Formula parse_formula(std::string_view text) { return detail::Parser(text).parse_formula_only(); }

inline ClassTerm parse_class_term(std::string_view text) {
  auto r = parse(text);
  if (auto* t = std::get_if<ClassTerm>(&r)) return *t;
  throw input_error("expected a class term '{ x | ... }'");
}

// ---- core form ---------------------------------------------------------------

/// Equivalent formula over {∈, =, not, and, exists} only.
inline Formula desugar(const Formula& f) {
  using namespace fm;
  switch (f.kind()) {
    case FormulaKind::member:
    case FormulaKind::equal: return f;
    case FormulaKind::not_: return not_(desugar(f.a()));
    case FormulaKind::and_: return and_(desugar(f.a()), desugar(f.b()));
    case FormulaKind::or_: return not_(and_(not_(desugar(f.a())), not_(desugar(f.b()))));
    case FormulaKind::implies: return not_(and_(desugar(f.a()), not_(desugar(f.b()))));
    case FormulaKind::iff: {
      auto a = desugar(f.a()), b = desugar(f.b());
      return and_(not_(and_(a, not_(b))), not_(and_(b, not_(a))));
    }
    case FormulaKind::exists: return exists(f.var(), desugar(f.a()));
    case FormulaKind::forall: return not_(exists(f.var(), not_(desugar(f.a()))));
  }
  return f;
}

inline bool is_core(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::member:
    case FormulaKind::equal: return true;
    case FormulaKind::not_:
    case FormulaKind::exists: return is_core(f.a());
    case FormulaKind::and_: return is_core(f.a()) && is_core(f.b());
    default: return false;
  }
}

// ---- evaluation -------------------------------------------------------------

/// Single-case faults for mutation testing: each negates the result of one
/// connective case of the evaluator and leaves every other case intact.
enum class Mutation { none, flip_not, flip_and, flip_or, flip_implies, flip_iff, flip_exists, flip_forall };

inline constexpr Mutation all_mutations[] = {Mutation::flip_not,     Mutation::flip_and, Mutation::flip_or,
                                             Mutation::flip_implies, Mutation::flip_iff, Mutation::flip_exists,
                                             Mutation::flip_forall};

inline const char* to_string(Mutation m) {
  switch (m) {
    case Mutation::none: return "none";
    case Mutation::flip_not: return "flip_not";
    case Mutation::flip_and: return "flip_and";
    case Mutation::flip_or: return "flip_or";
    case Mutation::flip_implies: return "flip_implies";
    case Mutation::flip_iff: return "flip_iff";
    case Mutation::flip_exists: return "flip_exists";
    case Mutation::flip_forall: return "flip_forall";
  }
  return "?";
}

/// Values for free variables: set variables to elements, class variables to subsets.
struct Assignment {
  std::map<std::string, std::size_t, std::less<>> sets;
  std::map<std::string, Subset, std::less<>> classes;
};

/// A formula with variables resolved to slots. Set parameters occupy slots
/// 0..k-1; each quantifier gets the next slot by nesting depth.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::vector<std::string> set_params, std::vector<std::string> class_params)
      : set_params_(std::move(set_params)), class_params_(std::move(class_params)) {
    std::vector<std::string> scope = set_params_;
    root_ = compile(f, scope);
  }

  std::size_t slot_count() const { return slots_; }
  std::span<const std::string> set_params() const { return set_params_; }
  std::span<const std::string> class_params() const { return class_params_; }

  bool eval(const Structure& m, std::span<const std::size_t> set_args, std::span<const Subset> class_args,
            Mutation mu = Mutation::none) const {
    if (set_args.size() != set_params_.size() || class_args.size() != class_params_.size())
      throw contract_error("CompiledFormula::eval: argument count mismatch");
    std::vector<std::size_t> env(slots_, 0);
    std::copy(set_args.begin(), set_args.end(), env.begin());
    Ctx ctx{m, env, class_args, mu};
    return run(ctx, root_);
  }

 private:
  enum class Op : std::uint8_t { member_ss, member_sc, equal_ss, equal_sc, equal_cc, not_, and_, or_, implies, iff,
                                 forall, exists };
  struct Instr {
    Op op;
    std::uint32_t x = 0, y = 0;  // slots / class indices / child instructions
    std::uint32_t slot = 0;      // quantifier slot
  };
  struct Ctx {
    const Structure& m;
    std::vector<std::size_t>& env;
    std::span<const Subset> classes;
    Mutation mu;
  };

  std::uint32_t emit(Instr i) {
    code_.push_back(i);
    return static_cast<std::uint32_t>(code_.size() - 1);
  }

  std::uint32_t set_slot(const std::string& name, const std::vector<std::string>& scope) const {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == name) return static_cast<std::uint32_t>(i);
    throw contract_error("no binding for set variable '" + name + "'");
  }
  std::uint32_t class_index(const std::string& name) const {
    auto it = std::find(class_params_.begin(), class_params_.end(), name);
    if (it == class_params_.end()) throw contract_error("no binding for class variable '" + name + "'");
    return static_cast<std::uint32_t>(it - class_params_.begin());
  }

  std::uint32_t compile(const Formula& f, std::vector<std::string>& scope) {
    slots_ = std::max(slots_, scope.size());
    switch (f.kind()) {
      case FormulaKind::member: {
        if (f.lhs().is_class) throw contract_error("class variable on the left of 'in'");
        auto l = set_slot(f.lhs().name, scope);
        if (f.rhs().is_class) return emit({Op::member_sc, l, class_index(f.rhs().name)});
        return emit({Op::member_ss, l, set_slot(f.rhs().name, scope)});
      }
      case FormulaKind::equal: {
        Term l = f.lhs(), r = f.rhs();
        if (l.is_class && !r.is_class) std::swap(l, r);
        if (!l.is_class && !r.is_class) return emit({Op::equal_ss, set_slot(l.name, scope), set_slot(r.name, scope)});
        if (!l.is_class) return emit({Op::equal_sc, set_slot(l.name, scope), class_index(r.name)});
        return emit({Op::equal_cc, class_index(l.name), class_index(r.name)});
      }
      case FormulaKind::not_: {
        auto a = compile(f.a(), scope);
        return emit({Op::not_, a});
      }
      case FormulaKind::forall:
      case FormulaKind::exists: {
        const auto slot = static_cast<std::uint32_t>(scope.size());
        scope.push_back(f.var());
        auto a = compile(f.a(), scope);
        scope.pop_back();
        slots_ = std::max<std::size_t>(slots_, slot + 1);
        return emit({f.kind() == FormulaKind::forall ? Op::forall : Op::exists, a, 0, slot});
      }
      default: {
        auto a = compile(f.a(), scope);
        auto b = compile(f.b(), scope);
        Op op = f.kind() == FormulaKind::and_ ? Op::and_
                : f.kind() == FormulaKind::or_ ? Op::or_
                : f.kind() == FormulaKind::implies ? Op::implies
                                                   : Op::iff;
        return emit({op, a, b});
      }
    }
  }

  bool quantify(const Ctx& c, const Instr& i, bool universal) const {
    for (std::size_t e = 0; e < c.m.size(); ++e) {
      c.env[i.slot] = e;
      if (run(c, i.x) != universal) return !universal;
    }
    return universal;
  }

  bool run(const Ctx& c, std::uint32_t pc) const {
    const Instr& i = code_[pc];
    bool v = false;
    Mutation hit = Mutation::none;
    switch (i.op) {
      case Op::member_ss: return c.m.member(c.env[i.x], c.env[i.y]);
      case Op::member_sc: return c.classes[i.y].contains(c.env[i.x]);
      case Op::equal_ss: return c.env[i.x] == c.env[i.y];
      case Op::equal_sc: return c.m.extension_of(c.env[i.x]) == c.classes[i.y];
      case Op::equal_cc: return c.classes[i.x] == c.classes[i.y];
      case Op::not_: v = !run(c, i.x); hit = Mutation::flip_not; break;
      case Op::and_: v = run(c, i.x) && run(c, i.y); hit = Mutation::flip_and; break;
      case Op::or_: v = run(c, i.x) || run(c, i.y); hit = Mutation::flip_or; break;
      case Op::implies: v = !run(c, i.x) || run(c, i.y); hit = Mutation::flip_implies; break;
      case Op::iff: v = run(c, i.x) == run(c, i.y); hit = Mutation::flip_iff; break;
      case Op::exists: v = quantify(c, i, false); hit = Mutation::flip_exists; break;
      case Op::forall: v = quantify(c, i, true); hit = Mutation::flip_forall; break;
    }
    return c.mu == hit ? !v : v;
  }

  std::vector<std::string> set_params_;
  std::vector<std::string> class_params_;
  std::vector<Instr> code_;
  std::uint32_t root_ = 0;
  std::size_t slots_ = 0;
};

/// Tarskian satisfaction of `f` in `m` under `env`; every free variable must be bound.
inline bool evaluate(const Structure& m, const Formula& f, const Assignment& env, Mutation mu = Mutation::none) {
  std::vector<std::string> sets, classes;
  std::vector<std::size_t> set_args;
  std::vector<Subset> class_args;
  for (const auto& t : free_variables(f)) {
    if (t.is_class) {
      auto it = env.classes.find(t.name);
      if (it == env.classes.end()) throw contract_error("no binding for class variable '" + t.name + "'");
      if (!it->second.subset_of(m.domain())) throw contract_error("class '" + t.name + "' exceeds the domain");
      classes.push_back(t.name);
      class_args.push_back(it->second);
    } else {
      auto it = env.sets.find(t.name);
      if (it == env.sets.end()) throw contract_error("no binding for set variable '" + t.name + "'");
      if (it->second >= m.size()) throw contract_error("set variable '" + t.name + "' bound outside the domain");
      sets.push_back(t.name);
      set_args.push_back(it->second);
    }
  }
  CompiledFormula c(f, std::move(sets), std::move(classes));
  return c.eval(m, set_args, class_args, mu);
}

/// {e | m ⊨ body[var := e]}, class variables taken from env.
inline ClassRef class_extension(const Structure& m, const ClassTerm& t, const Assignment& env = {}) {
  std::vector<std::string> classes;
  std::vector<Subset> class_args;
  for (const auto& name : free_class_variables(t.body)) {
    auto it = env.classes.find(name);
    if (it == env.classes.end()) throw contract_error("no binding for class variable '" + name + "'");
    classes.push_back(name);
    class_args.push_back(it->second);
  }
  CompiledFormula c(t.body, {t.var}, std::move(classes));
  Subset ext;
  for (std::size_t e = 0; e < m.size(); ++e) {
    std::size_t arg[1] = {e};
    if (c.eval(m, arg, class_args)) ext.insert(e);
  }
  return ClassRef{ext, ClassOrigin{ClassOrigin::Kind::formula, to_string(t)}};
}

// ---- enumeration ------------------------------------------------------------

inline constexpr std::size_t default_formula_depth_cap = 3;

/// Every formula over `setvars` (the first is the distinguished free variable)
/// with at most `depth` non-atom nodes, built from atoms v in w and v = w,
/// not, and, and exists over fresh variables. Ordered by node count, then
/// atoms < not < and < exists. The k-th nested quantifier always binds the
/// k-th fresh name, so no two outputs are alpha-variants.
inline std::vector<Formula> enumerate_formulas(std::size_t depth, std::vector<std::string> setvars = {"x"},
                                               std::size_t cap = default_formula_depth_cap) {
  if (depth > cap)
    throw budget_error("enumerate_formulas: depth " + std::to_string(depth) + " exceeds cap " + std::to_string(cap));
  if (setvars.empty()) throw precondition_error("enumerate_formulas: need at least one variable");
  // Fresh names avoid the inputs and "s", which the principle sweep binds.
  std::vector<std::string> fresh;
  for (std::string cand : {"y", "z", "w", "v", "u", "t", "r", "q", "p"}) {
    if (std::find(setvars.begin(), setvars.end(), cand) == setvars.end()) fresh.push_back(cand);
    if (fresh.size() == depth) break;
  }
  if (fresh.size() < depth) throw precondition_error("enumerate_formulas: ran out of fresh variable names");

  // memo[k][j]: formulas with exactly k connectives when j quantifiers enclose them.
  std::vector<std::vector<std::vector<Formula>>> memo(depth + 1, std::vector<std::vector<Formula>>(depth + 1));
  std::vector<std::vector<char>> done(depth + 1, std::vector<char>(depth + 1, 0));
  std::function<const std::vector<Formula>&(std::size_t, std::size_t)> gen =
      [&](std::size_t k, std::size_t j) -> const std::vector<Formula>& {
    if (done[k][j]) return memo[k][j];
    std::vector<Formula> out;
    std::vector<std::string> vars = setvars;
    vars.insert(vars.end(), fresh.begin(), fresh.begin() + static_cast<std::ptrdiff_t>(j));
    if (k == 0) {
      for (const auto& v : vars)
        for (const auto& w : vars) out.push_back(fm::in(set_var(v), set_var(w)));
      for (const auto& v : vars)
        for (const auto& w : vars) out.push_back(fm::eq(set_var(v), set_var(w)));
    } else {
      for (const auto& a : gen(k - 1, j)) out.push_back(fm::not_(a));
      for (std::size_t i = 0; i + 1 <= k; ++i) {
        const auto& ls = gen(i, j);
        const auto& rs = gen(k - 1 - i, j);
        for (const auto& l : ls)
          for (const auto& r : rs) out.push_back(fm::and_(l, r));
      }
      for (const auto& a : gen(k - 1, j + 1)) out.push_back(fm::exists(fresh[j], a));
    }
    memo[k][j] = std::move(out);
    done[k][j] = 1;
    return memo[k][j];
  };
  std::vector<Formula> all;
  for (std::size_t k = 0; k <= depth; ++k) {
    const auto& level = gen(k, 0);
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

// ---- the principle as formulas ----------------------------------------------

/// ¬∃s ∀x (x ∈ s ↔ φ)
inline Formula principle_lhs(const Formula& phi, const std::string& x = "x", const std::string& s = "s") {
  return fm::not_(fm::exists(s, fm::forall(x, fm::iff(fm::in(set_var(x), set_var(s)), phi))));
}

/// ∀s (∀x (x ∈ s → φ) → ∃x (x ∉ s ∧ φ))
inline Formula principle_rhs(const Formula& phi, const std::string& x = "x", const std::string& s = "s") {
  return fm::forall(s, fm::implies(fm::forall(x, fm::implies(fm::in(set_var(x), set_var(s)), phi)),
                                   fm::exists(x, fm::and_(fm::not_(fm::in(set_var(x), set_var(s))), phi))));
}

}  // namespace paradox

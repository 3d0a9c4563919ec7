#include "tw/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <optional>
#include <set>

namespace tw {

namespace {
using NodePtr = std::shared_ptr<const Formula::Node>;

NodePtr make_node(FormulaOp op, int var, Term l, Term r, NodePtr a, NodePtr b) {
  return std::make_shared<const Formula::Node>(Formula::Node{op, var, std::move(l), std::move(r), std::move(a), std::move(b)});
}
}  // namespace

Formula Formula::eq(const Term& l, const Term& r) { return Formula(make_node(FormulaOp::Eq, 0, l, r, nullptr, nullptr)); }
Formula Formula::neq(const Term& l, const Term& r) { return Formula(make_node(FormulaOp::Neq, 0, l, r, nullptr, nullptr)); }
Formula operator&&(const Formula& a, const Formula& b) {
  return Formula(make_node(FormulaOp::And, 0, Term::zero(), Term::zero(), a.node_, b.node_));
}
Formula operator||(const Formula& a, const Formula& b) {
  return Formula(make_node(FormulaOp::Or, 0, Term::zero(), Term::zero(), a.node_, b.node_));
}
Formula operator!(const Formula& a) { return Formula(make_node(FormulaOp::Not, 0, Term::zero(), Term::zero(), a.node_, nullptr)); }
Formula Formula::exists_atom(int v, const Formula& body) {
  return Formula(make_node(FormulaOp::ExistsAtom, v, Term::zero(), Term::zero(), body.node_, nullptr));
}
Formula Formula::forall_atom(int v, const Formula& body) {
  return Formula(make_node(FormulaOp::ForallAtom, v, Term::zero(), Term::zero(), body.node_, nullptr));
}
Formula Formula::exists(int v, const Formula& body) {
  return Formula(make_node(FormulaOp::Exists, v, Term::zero(), Term::zero(), body.node_, nullptr));
}
Formula Formula::forall(int v, const Formula& body) {
  return Formula(make_node(FormulaOp::Forall, v, Term::zero(), Term::zero(), body.node_, nullptr));
}

namespace {

void collect_term_vars(const Term& t, std::set<int>& out) {
  for (int v = 0; v < t.arity(); ++v)
    if (t.mentions(v)) out.insert(v);
}

void free_vars_rec(const Formula& f, std::set<int>& out) {
  switch (f.op()) {
    case FormulaOp::Eq:
    case FormulaOp::Neq:
      collect_term_vars(f.lhs_term(), out);
      collect_term_vars(f.rhs_term(), out);
      return;
    case FormulaOp::And:
    case FormulaOp::Or:
      free_vars_rec(f.a(), out);
      free_vars_rec(f.b(), out);
      return;
    case FormulaOp::Not: free_vars_rec(f.a(), out); return;
    default: {
      std::set<int> inner;
      free_vars_rec(f.a(), inner);
      inner.erase(f.bound_var());
      out.insert(inner.begin(), inner.end());
    }
  }
}

}  // namespace

std::vector<int> Formula::free_vars() const {
  std::set<int> vars;
  free_vars_rec(*this, vars);
  return {vars.begin(), vars.end()};
}

Formula alpha_formula(int x_var) {
  const int y_var = x_var == 1 ? 2 : 1;
  const Term x = Term::var(x_var);
  const Term y = Term::var(y_var);
  return Formula::neq(x, Term::zero()) &&
         Formula::forall_atom(y_var, Formula::eq(x & y, Term::zero()) || Formula::eq(x & y, x));
}

Formula phi_formula() {
  const Term x = Term::var(0);
  const Term w = Term::var(3), y = Term::var(1), z = Term::var(2);
  const Formula three = Formula::exists_atom(
      3, Formula::exists_atom(1, Formula::exists_atom(2, Formula::eq(Term::f(x) & Term::g(x), w | y | z))));
  return alpha_formula(0) && !three;
}

Formula tau_formula(int n) {
  const Term x = Term::var(0);
  const Term marker = Term::f(Term::g_pow(2, x) & ~Term::g(x));
  return phi_formula() && Formula::neq(nu_term(n) & marker, Term::zero());
}

// ---------------------------------------------------------------------------
// Printing and parsing

namespace {

void print(const Formula& f, int ctx, std::string& out) {
  switch (f.op()) {
    case FormulaOp::Eq:
    case FormulaOp::Neq:
      out += to_string(f.lhs_term());
      out += f.op() == FormulaOp::Eq ? " = " : " != ";
      out += to_string(f.rhs_term());
      return;
    case FormulaOp::Or:
      if (ctx > 0) out += '(';
      print(f.a(), 1, out);
      out += " || ";
      print(f.b(), 1, out);
      if (ctx > 0) out += ')';
      return;
    case FormulaOp::And:
      if (ctx > 1) out += '(';
      print(f.a(), 2, out);
      out += " && ";
      print(f.b(), 2, out);
      if (ctx > 1) out += ')';
      return;
    case FormulaOp::Not:
      out += '!';
      print(f.a(), 3, out);
      return;
    default: {
      static const char* names[] = {"", "", "", "", "", "exists_atom", "forall_atom", "exists", "forall"};
      if (ctx > 0) out += '(';
      out += names[static_cast<int>(f.op())];
      out += ' ' + var_name(f.bound_var()) + " . ";
      print(f.a(), 0, out);
      if (ctx > 0) out += ')';
    }
  }
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_formula();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

  Formula parse_formula() {
    if (auto q = try_quantifier()) return *q;
    return parse_or();
  }

 private:
  std::optional<Formula> try_quantifier() {
    skip_ws();
    const auto save = pos_;
    const std::string word = ident();
    FormulaOp op;
    if (word == "exists_atom") op = FormulaOp::ExistsAtom;
    else if (word == "forall_atom") op = FormulaOp::ForallAtom;
    else if (word == "exists") op = FormulaOp::Exists;
    else if (word == "forall") op = FormulaOp::Forall;
    else {
      pos_ = save;
      return std::nullopt;
    }
    const std::string name = ident();
    const int v = var_index(name);
    if (v < 0) fail("expected a variable after quantifier");
    expect('.');
    Formula body = parse_formula();
    switch (op) {
      case FormulaOp::ExistsAtom: return Formula::exists_atom(v, body);
      case FormulaOp::ForallAtom: return Formula::forall_atom(v, body);
      case FormulaOp::Exists: return Formula::exists(v, body);
      default: return Formula::forall(v, body);
    }
  }

  // alpha, phi and tau<n>, all in the free variable x.
  std::optional<Formula> try_named() {
    skip_ws();
    const auto save = pos_;
    const std::string word = ident();
    if (word == "alpha") return alpha_formula();
    if (word == "phi") return phi_formula();
    if (word.size() > 3 && word.rfind("tau", 0) == 0) {
      int n = 0;
      const auto [ptr, ec] = std::from_chars(word.data() + 3, word.data() + word.size(), n);
      if (ec == std::errc{} && ptr == word.data() + word.size()) {
        if (n < 3) fail("tau_n needs n >= 3");
        return tau_formula(n);
      }
    }
    pos_ = save;
    return std::nullopt;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (consume2('|', '|')) f = f || parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_not();
    while (consume2('&', '&')) f = f && parse_not();
    return f;
  }

  Formula parse_not() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '!' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '=')) {
      ++pos_;
      return !parse_not();
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (auto q = try_quantifier()) return *q;
    if (auto n = try_named()) return *n;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const auto save = pos_;
      try {
        ++pos_;
        Formula f = parse_formula();
        expect(')');
        return f;
      } catch (const ParseError&) {
        pos_ = save;  // a parenthesized term, not a formula
      }
    }
    Term l = parse_term_prefix(text_, pos_);
    skip_ws();
    bool negated = false;
    if (consume2('!', '=')) {
      negated = true;
    } else if (!consume('=')) {
      fail("expected '=' or '!='");
    }
    Term r = parse_term_prefix(text_, pos_);
    return negated ? Formula::neq(l, r) : Formula::eq(l, r);
  }

  std::string ident() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool consume2(char c1, char c2) {
    skip_ws();
    if (pos_ + 1 < text_.size() && text_[pos_] == c1 && text_[pos_ + 1] == c2) {
      pos_ += 2;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("formula syntax at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// t if `m` is t & y or y & t with t free of y.
std::optional<Term> meet_with(const Term& m, int y) {
  if (m.op() != TermOp::Meet) return std::nullopt;
  auto is_y = [y](const Term& t) { return t.op() == TermOp::Var && t.var_index() == y; };
  if (is_y(m.rhs()) && !m.lhs().mentions(y)) return m.lhs();
  if (is_y(m.lhs()) && !m.rhs().mentions(y)) return m.rhs();
  return std::nullopt;
}

bool is_zero(const Term& t) { return t.op() == TermOp::Zero; }

// `forall_atom y . (t & y = 0 || t & y = t)` in any operand order; returns t.
std::optional<Term> match_atomhood(const Formula& f) {
  if (f.op() != FormulaOp::ForallAtom) return std::nullopt;
  const int y = f.bound_var();
  const Formula body = f.a();
  if (body.op() != FormulaOp::Or) return std::nullopt;

  auto zero_side = [&](const Formula& e) -> std::optional<Term> {
    if (e.op() != FormulaOp::Eq) return std::nullopt;
    if (is_zero(e.rhs_term())) return meet_with(e.lhs_term(), y);
    if (is_zero(e.lhs_term())) return meet_with(e.rhs_term(), y);
    return std::nullopt;
  };
  auto self_side = [&](const Formula& e) -> std::optional<Term> {
    if (e.op() != FormulaOp::Eq) return std::nullopt;
    if (auto t = meet_with(e.lhs_term(), y); t && *t == e.rhs_term()) return t;
    if (auto t = meet_with(e.rhs_term(), y); t && *t == e.lhs_term()) return t;
    return std::nullopt;
  };
  for (int flip = 0; flip < 2; ++flip) {
    const Formula p = flip ? body.b() : body.a();
    const Formula q = flip ? body.a() : body.b();
    auto t1 = zero_side(p);
    auto t2 = self_side(q);
    if (t1 && t2 && *t1 == *t2) return t1;
  }
  return std::nullopt;
}

struct BoundedJoin {
  Term target;
  std::size_t k;
};

void join_leaves(const Term& t, std::vector<const Term::Node*>& leaves, bool& ok) {
  if (t.op() == TermOp::Join) {
    join_leaves(t.lhs(), leaves, ok);
    join_leaves(t.rhs(), leaves, ok);
  } else if (t.op() == TermOp::Var) {
    leaves.push_back(t.node());
  } else {
    ok = false;
  }
}

// `exists_atom y1 ... yk . t = y1 | ... | yk` with t free of the y's.
std::optional<BoundedJoin> match_bounded_join(const Formula& f) {
  std::set<int> bound;
  Formula cur = f;
  while (cur.op() == FormulaOp::ExistsAtom) {
    bound.insert(cur.bound_var());
    cur = cur.a();
  }
  if (bound.empty() || cur.op() != FormulaOp::Eq) return std::nullopt;
  for (int side = 0; side < 2; ++side) {
    const Term join = side ? cur.lhs_term() : cur.rhs_term();
    const Term target = side ? cur.rhs_term() : cur.lhs_term();
    std::vector<const Term::Node*> leaves;
    bool ok = true;
    join_leaves(join, leaves, ok);
    if (!ok) continue;
    std::set<int> used;
    for (const auto* n : leaves) used.insert(n->var);
    if (!std::includes(bound.begin(), bound.end(), used.begin(), used.end())) continue;
    if (used.size() != leaves.size()) continue;
    bool target_free = true;
    for (int v : bound) target_free = target_free && !target.mentions(v);
    if (!target_free) continue;
    return BoundedJoin{target, used.size()};
  }
  return std::nullopt;
}

template <typename Carrier>
class Evaluator {
 public:
  using Element = typename Carrier::Element;

  Evaluator(const Carrier& c, bool patterns, bool enumerable) : c_(c), patterns_(patterns), enumerable_(enumerable) {}

  bool eval(const Formula& f, std::vector<std::optional<Element>>& env) {
    switch (f.op()) {
      case FormulaOp::Eq: return c_.equal(term(f.lhs_term(), env), term(f.rhs_term(), env));
      case FormulaOp::Neq: return !c_.equal(term(f.lhs_term(), env), term(f.rhs_term(), env));
      case FormulaOp::And: return eval(f.a(), env) && eval(f.b(), env);
      case FormulaOp::Or: return eval(f.a(), env) || eval(f.b(), env);
      case FormulaOp::Not: return !eval(f.a(), env);
      default: break;
    }
    if (patterns_) {
      if (auto t = match_atomhood(f)) {
        const Element v = term(*t, env);
        return c_.equal(v, c_.zero()) || c_.is_atom(v);
      }
      if (auto j = match_bounded_join(f)) {
        const Cardinality card = c_.cardinality(term(j->target, env));
        return !card.infinite && card.count >= 1 && card.count <= j->k;
      }
    }
    return quantify(f, env);
  }

 private:
  Element term(const Term& t, const std::vector<std::optional<Element>>& env) {
    std::vector<Element> plain;
    for (std::size_t i = 0; i < env.size(); ++i) {
      if (env[i]) {
        plain.push_back(*env[i]);
      } else if (t.mentions(static_cast<int>(i))) {
        throw UsageError("unbound variable " + var_name(static_cast<int>(i)));
      } else {
        plain.push_back(c_.zero());
      }
    }
    if (t.arity() > static_cast<int>(plain.size())) throw UsageError("unbound variable " + var_name(t.arity() - 1));
    return eval_term(t, c_, plain);
  }

  bool quantify(const Formula& f, std::vector<std::optional<Element>>& env) {
    if constexpr (std::is_same_v<Carrier, FiniteCarrier>) {
      const bool atoms_only = f.op() == FormulaOp::ExistsAtom || f.op() == FormulaOp::ForallAtom;
      const bool existential = f.op() == FormulaOp::ExistsAtom || f.op() == FormulaOp::Exists;
      const auto domain = atoms_only ? c_.atoms() : c_.elements();
      const auto v = static_cast<std::size_t>(f.bound_var());
      if (env.size() <= v) env.resize(v + 1);
      const auto saved = env[v];
      bool result = !existential;
      for (const auto& e : domain) {
        env[v] = e;
        if (eval(f.a(), env) == existential) {
          result = existential;
          break;
        }
      }
      env[v] = saved;
      return result;
    } else {
      (void)env;
      (void)enumerable_;
      const bool relativized = f.op() == FormulaOp::ExistsAtom || f.op() == FormulaOp::ForallAtom;
      throw UnsupportedQuery(relativized
                                 ? "atom quantifier of unrecognized shape on an infinite carrier: " + to_string(f)
                                 : "unrelativized quantifier on an infinite carrier: " + to_string(f));
    }
  }

  const Carrier& c_;
  bool patterns_;
  bool enumerable_;
};

}  // namespace

bool eval_formula(const Formula& f, const AlgebraHandle& a, const std::vector<AlgebraHandle::Element>& env) {
  return std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        std::vector<std::optional<typename C::Element>> typed;
        for (const auto& e : env) {
          if (!std::holds_alternative<typename C::Element>(e)) throw UsageError("environment element of the wrong carrier kind");
          typed.emplace_back(std::get<typename C::Element>(e));
        }
        Evaluator<C> ev(c, true, std::is_same_v<C, FiniteCarrier>);
        return ev.eval(f, typed);
      },
      a.carrier());
}

bool eval_formula_bruteforce(const Formula& f, const FiniteCarrier& c, const std::vector<IndexSet>& env) {
  std::vector<std::optional<IndexSet>> typed(env.begin(), env.end());
  Evaluator<FiniteCarrier> ev(c, false, true);
  return ev.eval(f, typed);
}

}  // namespace tw

#include "tw/terms.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <unordered_set>

namespace tw {

Term Term::make(TermOp op, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r) {
  return Term(std::make_shared<const Node>(Node{op, 0, std::move(l), std::move(r)}));
}

Term Term::var(int index) {
  if (index < 0) throw UsageError("variable index must be >= 0");
  return Term(std::make_shared<const Node>(Node{TermOp::Var, index, nullptr, nullptr}));
}
Term Term::zero() { return make(TermOp::Zero); }
Term Term::one() { return make(TermOp::One); }
Term operator|(const Term& a, const Term& b) { return Term::make(TermOp::Join, a.node_, b.node_); }
Term operator&(const Term& a, const Term& b) { return Term::make(TermOp::Meet, a.node_, b.node_); }
Term operator~(const Term& a) { return Term::make(TermOp::Not, a.node_); }
Term Term::f(const Term& a) { return make(TermOp::F, a.node_); }
Term Term::g(const Term& a) { return make(TermOp::G, a.node_); }

Term Term::f_pow(int k, const Term& a) {
  Term out = a;
  for (int i = 0; i < k; ++i) out = f(out);
  return out;
}

Term Term::g_pow(int k, const Term& a) {
  Term out = a;
  for (int i = 0; i < k; ++i) out = g(out);
  return out;
}

namespace {

template <typename Fn>
int fold_dag(const Term::Node* root, Fn combine) {
  std::unordered_map<const Term::Node*, int> memo;
  std::function<int(const Term::Node*)> go = [&](const Term::Node* n) -> int {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const int l = n->lhs ? go(n->lhs.get()) : 0;
    const int r = n->rhs ? go(n->rhs.get()) : 0;
    const int v = combine(*n, l, r);
    memo.emplace(n, v);
    return v;
  };
  return go(root);
}

}  // namespace

int Term::depth() const {
  return fold_dag(node(), [](const Node& n, int l, int r) {
    const int inner = std::max(l, r);
    return n.op == TermOp::F || n.op == TermOp::G ? inner + 1 : inner;
  });
}

int Term::arity() const {
  return fold_dag(node(), [](const Node& n, int l, int r) {
    return n.op == TermOp::Var ? n.var + 1 : std::max(l, r);
  });
}

bool Term::mentions(int v) const {
  return fold_dag(node(), [v](const Node& n, int l, int r) { return (n.op == TermOp::Var && n.var == v) || l || r ? 1 : 0; }) != 0;
}

bool operator==(const Term& a, const Term& b) {
  std::function<bool(const Term::Node*, const Term::Node*)> eq = [&](const Term::Node* x, const Term::Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->op != y->op || x->var != y->var) return false;
    return eq(x->lhs.get(), y->lhs.get()) && eq(x->rhs.get(), y->rhs.get());
  };
  return eq(a.node(), b.node());
}

std::string var_name(int index) {
  static const char* names[] = {"x", "y", "z", "w"};
  if (index >= 0 && index < 4) return names[index];
  return "v" + std::to_string(index);
}

int var_index(std::string_view name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name == "w") return 3;
  if (name.size() >= 2 && name[0] == 'v') {
    int v = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), v);
    if (ec == std::errc{} && ptr == name.data() + name.size() && v >= 4) return v;
  }
  return -1;
}

Term beta_term() {
  const Term x = Term::var(0);
  return Term::f_pow(4, x) & ~Term::f_pow(2, x);
}

Term sigma_term() {
  const Term x = Term::var(0);
  const Term b = beta_term();
  const Term inner = x | Term::g_pow(2, b) | Term::f_pow(4, Term::g_pow(10, b) & ~Term::g_pow(8, b));
  return Term::f(x) & ~inner;
}

Term nu_term(int n) {
  if (n < 3) throw UsageError("nu_n is defined for n >= 3, got " + std::to_string(n));
  const Term x = Term::var(0);
  const Term sigma = sigma_term();
  Term prev2 = sigma;                                  // nu_2 slot
  Term prev1 = Term::f(sigma) & ~Term::f(x);           // nu_3
  if (n == 3) return prev1;
  Term cur = Term::f(prev1) & ~Term::f(sigma);         // nu_4
  prev2 = prev1;
  prev1 = cur;
  for (int k = 5; k <= n; ++k) {
    cur = Term::f(prev1) & ~Term::f(prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

namespace {

// Precedence: | lowest, then &, then prefix ~ / f / g.
void print(const Term& t, int ctx, std::string& out) {
  switch (t.op()) {
    case TermOp::Var: out += var_name(t.var_index()); return;
    case TermOp::Zero: out += '0'; return;
    case TermOp::One: out += '1'; return;
    case TermOp::Join: {
      if (ctx > 0) out += '(';
      print(t.lhs(), 0, out);
      out += " | ";
      print(t.rhs(), 1, out);
      if (ctx > 0) out += ')';
      return;
    }
    case TermOp::Meet: {
      if (ctx > 1) out += '(';
      print(t.lhs(), 1, out);
      out += " & ";
      print(t.rhs(), 2, out);
      if (ctx > 1) out += ')';
      return;
    }
    case TermOp::Not: out += '~'; print(t.lhs(), 2, out); return;
    case TermOp::F: out += "f("; print(t.lhs(), 0, out); out += ')'; return;
    case TermOp::G: out += "g("; print(t.lhs(), 0, out); out += ')'; return;
  }
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_all() {
    Term t = parse_join();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

  Term parse_join() {
    Term t = parse_meet();
    while (peek() == '|' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '|')) {
      ++pos_;
      t = t | parse_meet();
    }
    return t;
  }

  Term parse_meet() {
    Term t = parse_unary();
    while (peek() == '&' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '&')) {
      ++pos_;
      t = t & parse_unary();
    }
    return t;
  }

  Term parse_unary() {
    if (consume('~')) return ~parse_unary();
    Term t = parse_primary();
    while (consume('\'')) t = ~t;
    return t;
  }

  Term parse_primary() {
    skip_ws();
    if (consume('(')) {
      Term t = parse_join();
      expect(')');
      return t;
    }
    if (consume('0')) return Term::zero();
    if (consume('1')) return Term::one();
    const std::string name = ident();
    if (name.empty()) fail("expected a term");
    if (name == "f" || name == "g") {
      int power = 1;
      if (consume('^')) power = number();
      expect('(');
      Term arg = parse_join();
      expect(')');
      return name == "f" ? Term::f_pow(power, arg) : Term::g_pow(power, arg);
    }
    if (name == "beta" || name == "sigma" || (name.size() > 2 && name.rfind("nu", 0) == 0)) {
      Term body = macro(name);
      if (consume('(')) {
        Term arg = parse_join();
        expect(')');
        return substitute_x(body, arg);
      }
      return body;
    }
    const int v = var_index(name);
    if (v < 0) fail("unknown identifier '" + name + "'");
    return Term::var(v);
  }

  Term macro(const std::string& name) {
    if (name == "beta") return beta_term();
    if (name == "sigma") return sigma_term();
    std::string_view digits = std::string_view(name).substr(2);
    if (!digits.empty() && digits[0] == '_') digits.remove_prefix(1);
    int n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail("unknown identifier '" + name + "'");
    return nu_term(n);
  }

  static Term substitute_x(const Term& body, const Term& arg) {
    std::unordered_map<const Term::Node*, Term> memo;
    std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
      if (auto it = memo.find(t.node()); it != memo.end()) return it->second;
      Term out = [&]() -> Term {
        switch (t.op()) {
          case TermOp::Var: return t.var_index() == 0 ? arg : t;
          case TermOp::Zero:
          case TermOp::One: return t;
          case TermOp::Join: return go(t.lhs()) | go(t.rhs());
          case TermOp::Meet: return go(t.lhs()) & go(t.rhs());
          case TermOp::Not: return ~go(t.lhs());
          case TermOp::F: return Term::f(go(t.lhs()));
          case TermOp::G: return Term::g(go(t.lhs()));
        }
        return t;
      }();
      memo.emplace(t.node(), out);
      return out;
    };
    return go(body);
  }

  std::string ident() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int number() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int n = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n);
    if (ec != std::errc{} || start == pos_) fail("expected a number");
    return n;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("term syntax at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

Term parse_term(std::string_view text) { return TermParser(text).parse_all(); }

Term parse_term_prefix(std::string_view text, std::size_t& pos) {
  TermParser p(text);
  p.set_pos(pos);
  Term t = p.parse_join();
  pos = p.pos();
  return t;
}

std::vector<IndexSet> FiniteCarrier::atoms() const {
  std::vector<IndexSet> out;
  for (std::size_t a = 0; a < a_->atom_count(); ++a) out.push_back(IndexSet(a_->atom_count(), {a}));
  return out;
}

std::vector<IndexSet> FiniteCarrier::elements() const {
  const std::size_t n = a_->atom_count();
  if (n > 20) throw CapacityError("element enumeration limited to 20 atoms");
  std::vector<IndexSet> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    IndexSet e(n);
    for (std::size_t a = 0; a < n; ++a)
      if ((mask >> a) & 1U) e.insert(a);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

// Small sample of carrier elements for construction-time spot checks.
template <typename Carrier>
void spot_check(const Carrier& c, const std::vector<typename Carrier::Element>& sample) {
  for (const auto& x : sample) {
    if (!c.equal(c.meet(x, c.neg(x)), c.zero())) throw UsageError("carrier fails x & ~x = 0");
    if (!c.equal(c.neg(c.neg(x)), x)) throw UsageError("carrier fails ~~x = x");
    for (const auto& y : sample) {
      const bool lhs = c.equal(c.meet(c.f(x), y), c.zero());
      const bool rhs = c.equal(c.meet(x, c.g(y)), c.zero());
      if (lhs != rhs) throw UsageError("carrier operators are not conjugate");
    }
  }
}

}  // namespace

AlgebraHandle AlgebraHandle::finite(std::shared_ptr<const FiniteTenseAlgebra> a) {
  FiniteCarrier c(std::move(a));
  std::vector<IndexSet> sample = c.atoms();
  if (sample.size() > 8) sample.resize(8);
  sample.push_back(c.zero());
  sample.push_back(c.one());
  spot_check(c, sample);
  return AlgebraHandle(c);
}

AlgebraHandle AlgebraHandle::symbolic(SParamPtr s) {
  SymbolicCarrier c(s);
  std::vector<SymbolicSet> sample{
      SymbolicSet::basis(s, {BasisKind::A, 0, 1}),     SymbolicSet::basis(s, {BasisKind::A, 0, 3}),
      SymbolicSet::basis(s, {BasisKind::Srow, 1, 2}),  SymbolicSet::basis(s, {BasisKind::SbarRow, -1, 2}),
      SymbolicSet::basis(s, {BasisKind::D, 0, 1}),     SymbolicSet::basis(s, {BasisKind::U, 1, 1}),
      SymbolicSet::empty(s),
  };
  spot_check(c, sample);
  return AlgebraHandle(c);
}

AlgebraHandle::Element AlgebraHandle::eval(const Term& t, const std::vector<Element>& env) const {
  return std::visit(
      [&](const auto& c) -> Element {
        using C = std::decay_t<decltype(c)>;
        std::vector<typename C::Element> typed;
        for (const auto& e : env) {
          if (!std::holds_alternative<typename C::Element>(e)) throw UsageError("environment element of the wrong carrier kind");
          typed.push_back(std::get<typename C::Element>(e));
        }
        return eval_term(t, c, typed);
      },
      carrier_);
}

std::string to_string(const AlgebraHandle::Element& e) {
  if (const auto* s = std::get_if<SymbolicSet>(&e)) return s->to_string();
  const auto& set = std::get<IndexSet>(e);
  std::string out = "{";
  bool first = true;
  set.for_each([&](std::size_t i) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

}  // namespace tw

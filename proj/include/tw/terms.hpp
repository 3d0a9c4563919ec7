#pragma once

// Terms in the tense signature {join, meet, complement, f, g, 0, 1} and their
// evaluation over finite complex algebras and over the symbolic algebra B_S.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tw/error.hpp"
#include "tw/frames.hpp"
#include "tw/symbolic.hpp"

namespace tw {

enum class TermOp { Var, Zero, One, Join, Meet, Not, F, G };

/// Immutable term. Subterms are shared, so terms built by the recursive
/// constructors below (nu in particular) stay linear in size as DAGs even
/// when their tree expansion is exponential.
class Term {
 public:
  struct Node {
    TermOp op;
    int var = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  static Term var(int index);
  static Term zero();
  static Term one();
  friend Term operator|(const Term& a, const Term& b);
  friend Term operator&(const Term& a, const Term& b);
  friend Term operator~(const Term& a);
  static Term f(const Term& a);
  static Term g(const Term& a);
  /// f applied k times.
  static Term f_pow(int k, const Term& a);
  static Term g_pow(int k, const Term& a);

  TermOp op() const { return node_->op; }
  int var_index() const { return node_->var; }
  Term lhs() const { return Term(node_->lhs); }
  Term rhs() const { return Term(node_->rhs); }
  const Node* node() const { return node_.get(); }

  /// Maximum nesting of f/g.
  int depth() const;
  /// One more than the largest variable index (0 for closed terms).
  int arity() const;
  bool mentions(int var) const;

  /// Structural equality (not identity of shared nodes).
  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermOp op, std::shared_ptr<const Node> l = nullptr, std::shared_ptr<const Node> r = nullptr);

  std::shared_ptr<const Node> node_;
};

/// Variable display names: x, y, z, w for 0..3, then v4, v5, ...
std::string var_name(int index);
/// Inverse of var_name; -1 when `name` is not a variable name.
int var_index(std::string_view name);

// Derived terms in the variable x.
Term beta_term();
Term sigma_term();
/// nu_n for n >= 3; throws UsageError otherwise.
Term nu_term(int n);

/// Fully expanded text in the primitive syntax (`f(x)`, `x & y`, `~x`, ...).
std::string to_string(const Term& t);
/// Accepts the primitive syntax plus `f^k(t)`, `g^k(t)`, and the macros
/// `beta`, `sigma`, `nu<n>` (bare or applied to an argument; bare means x).
Term parse_term(std::string_view text);
/// Parses the longest term starting at `pos` and advances `pos` past it.
Term parse_term_prefix(std::string_view text, std::size_t& pos);

// ---------------------------------------------------------------------------
// Carriers

/// Powerset algebra of a finite frame; elements are atom sets.
class FiniteCarrier {
 public:
  using Element = IndexSet;

  explicit FiniteCarrier(std::shared_ptr<const FiniteTenseAlgebra> a) : a_(std::move(a)) {}

  const FiniteTenseAlgebra& algebra() const { return *a_; }
  Element zero() const { return a_->zero(); }
  Element one() const { return a_->one(); }
  Element join(const Element& x, const Element& y) const { return x | y; }
  Element meet(const Element& x, const Element& y) const { return x & y; }
  Element neg(const Element& x) const { return x.complement(); }
  Element f(const Element& x) const { return a_->f(x); }
  Element g(const Element& x) const { return a_->g(x); }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  bool is_atom(const Element& x) const { return x.size() == 1; }
  Cardinality cardinality(const Element& x) const { return Cardinality::finite(x.size()); }
  std::vector<Element> atoms() const;
  /// Every element; only for atom_count() <= 20.
  std::vector<Element> elements() const;

 private:
  std::shared_ptr<const FiniteTenseAlgebra> a_;
};

/// The symbolic algebra B_S.
class SymbolicCarrier {
 public:
  using Element = SymbolicSet;

  explicit SymbolicCarrier(SParamPtr s) : s_(std::move(s)) {}

  const SParamPtr& sparam() const { return s_; }
  Element zero() const { return SymbolicSet::empty(s_); }
  Element one() const { return SymbolicSet::full(s_); }
  Element join(const Element& x, const Element& y) const { return x.unite(y); }
  Element meet(const Element& x, const Element& y) const { return x.intersect(y); }
  Element neg(const Element& x) const { return x.complement(); }
  Element f(const Element& x) const { return apply_f(x); }
  Element g(const Element& x) const { return apply_g(x); }
  bool equal(const Element& x, const Element& y) const { return x.is_equal(y); }
  bool is_atom(const Element& x) const { return x.atom_test(); }
  Cardinality cardinality(const Element& x) const { return x.cardinality(); }

 private:
  SParamPtr s_;
};

/// Evaluates `t` with variable i bound to env[i]. Shared subterms are
/// evaluated once.
template <typename Carrier>
typename Carrier::Element eval_term(const Term& t, const Carrier& c,
                                    const std::vector<typename Carrier::Element>& env) {
  using Element = typename Carrier::Element;
  std::unordered_map<const Term::Node*, Element> memo;
  auto go = [&](auto&& self, const Term& u) -> Element {
    if (auto it = memo.find(u.node()); it != memo.end()) return it->second;
    Element out = [&]() -> Element {
      switch (u.op()) {
        case TermOp::Var:
          if (u.var_index() < 0 || static_cast<std::size_t>(u.var_index()) >= env.size())
            throw UsageError("unbound variable " + var_name(u.var_index()));
          return env[static_cast<std::size_t>(u.var_index())];
        case TermOp::Zero: return c.zero();
        case TermOp::One: return c.one();
        case TermOp::Join: return c.join(self(self, u.lhs()), self(self, u.rhs()));
        case TermOp::Meet: return c.meet(self(self, u.lhs()), self(self, u.rhs()));
        case TermOp::Not: return c.neg(self(self, u.lhs()));
        case TermOp::F: return c.f(self(self, u.lhs()));
        case TermOp::G: return c.g(self(self, u.lhs()));
      }
      throw UsageError("bad term node");
    }();
    memo.emplace(u.node(), out);
    return out;
  };
  return go(go, t);
}

/// Uniform handle over either carrier kind.
class AlgebraHandle {
 public:
  using Element = std::variant<IndexSet, SymbolicSet>;

  /// Both constructors spot-check the Boolean and conjugacy laws.
  static AlgebraHandle finite(std::shared_ptr<const FiniteTenseAlgebra> a);
  static AlgebraHandle symbolic(SParamPtr s);

  bool is_symbolic() const { return std::holds_alternative<SymbolicCarrier>(carrier_); }
  const std::variant<FiniteCarrier, SymbolicCarrier>& carrier() const { return carrier_; }

  Element eval(const Term& t, const std::vector<Element>& env) const;

 private:
  explicit AlgebraHandle(std::variant<FiniteCarrier, SymbolicCarrier> c) : carrier_(std::move(c)) {}
  std::variant<FiniteCarrier, SymbolicCarrier> carrier_;
};

std::string to_string(const AlgebraHandle::Element& e);

}  // namespace tw

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tw/terms.hpp"

namespace tw {

enum class FormulaOp { Eq, Neq, And, Or, Not, ExistsAtom, ForallAtom, Exists, Forall };

/// First-order formula over tense-algebra terms. ExistsAtom/ForallAtom
/// quantify over atoms only; Exists/Forall range over the whole carrier and
/// are only decidable on finite carriers.
class Formula {
 public:
  struct Node {
    FormulaOp op;
    int var = 0;
    Term lhs_term = Term::zero();
    Term rhs_term = Term::zero();
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  static Formula eq(const Term& l, const Term& r);
  static Formula neq(const Term& l, const Term& r);
  friend Formula operator&&(const Formula& a, const Formula& b);
  friend Formula operator||(const Formula& a, const Formula& b);
  friend Formula operator!(const Formula& a);
  static Formula exists_atom(int var, const Formula& body);
  static Formula forall_atom(int var, const Formula& body);
  static Formula exists(int var, const Formula& body);
  static Formula forall(int var, const Formula& body);

  FormulaOp op() const { return node_->op; }
  int bound_var() const { return node_->var; }
  const Term& lhs_term() const { return node_->lhs_term; }
  const Term& rhs_term() const { return node_->rhs_term; }
  Formula a() const { return Formula(node_->a); }
  Formula b() const { return Formula(node_->b); }

  /// Variables occurring free, ascending.
  std::vector<int> free_vars() const;
  bool is_closed() const { return free_vars().empty(); }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// x is an atom: x != 0 and every atom y has x & y = 0 or x & y = x.
Formula alpha_formula(int x_var = 0);
/// alpha(x) and f(x) & g(x) is not a join of three atoms.
Formula phi_formula();
/// phi(x) and nu_n(x) & f(g^2(x) & ~g(x)) != 0.
Formula tau_formula(int n);

/// Text syntax: `t = t`, `t != t`, `F && F`, `F || F`, `!F`, `(F)`,
/// `exists_atom w . F`, `forall_atom w . F`, `exists w . F`, `forall w . F`.
std::string to_string(const Formula& f);
Formula parse_formula(std::string_view text);

/// Exact truth value.
///
/// On a symbolic carrier atom quantifiers are decided by recognizing two
/// shapes: the atomhood test `forall_atom y . (t & y = 0 || t & y = t)` and
/// the bounded join `exists_atom y1 ... yk . t = y1 | ... | yk` (true iff t
/// has between 1 and k elements). Other quantifiers on symbolic carriers
/// throw UnsupportedQuery.
bool eval_formula(const Formula& f, const AlgebraHandle& a, const std::vector<AlgebraHandle::Element>& env);

/// Finite-carrier evaluation by plain enumeration of every quantifier; the
/// reference the pattern-based evaluator is tested against.
bool eval_formula_bruteforce(const Formula& f, const FiniteCarrier& c, const std::vector<IndexSet>& env);

}  // namespace tw

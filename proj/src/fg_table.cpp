// Transcription of the seventeen-clause action table of f and g on the
// generators. Kept independent of apply_f/apply_g so the two can be compared.
// Clause 15 as printed, A_{p-1,1} + U_p, only holds for m <= 2; the table uses
// the frame's value and keeps the printed one alongside.

#include <string>

#include "tw/error.hpp"
#include "tw/symbolic.hpp"

namespace tw {

namespace {

struct Builder {
  const SParamPtr& s;

  SymbolicSet A(int p, int m) const { return SymbolicSet::basis(s, {BasisKind::A, p, m}); }
  SymbolicSet S(int p, int m) const { return SymbolicSet::basis(s, {BasisKind::Srow, p, m}); }
  SymbolicSet Sbar(int p, int m) const { return SymbolicSet::basis(s, {BasisKind::SbarRow, p, m}); }
  SymbolicSet D(int p) const { return SymbolicSet::basis(s, {BasisKind::D, p, 1}); }
  SymbolicSet U(int p) const { return SymbolicSet::basis(s, {BasisKind::U, p, 1}); }
  SymbolicSet V() const { return SymbolicSet::full(s); }
  SymbolicSet none() const { return SymbolicSet::empty(s); }
  // {a_{p,k} : k >= j}
  SymbolicSet from(int p, int j) const {
    return j <= 1 ? SymbolicSet::basis(s, {BasisKind::Vrow, p, 1}) : S(p, j).unite(Sbar(p, j));
  }
  // A_{p,1} + ... + A_{p,k}
  SymbolicSet initial(int p, int k) const {
    SymbolicSet out = none();
    for (int n = 1; n <= k; ++n) out = out.unite(A(p, n));
    return out;
  }
};

TableClause f_clause(const SParamPtr& s, const BasisSet& b) {
  const Builder B{s};
  const int p = b.level;
  const int m = b.index;
  switch (b.kind) {
    case BasisKind::A:
      if (m == 1) return {1, B.A(p, 1).unite(B.A(p, 2)).unite(B.D(p - 1)).unite(B.S(p + 1, 1))};
      return {2, B.initial(p, m + 1).unite(B.D(p - 1))};
    case BasisKind::D: return {3, B.D(p).unite(B.S(p + 1, 1))};
    case BasisKind::U: return {4, B.V()};
    case BasisKind::Srow: return {5, B.D(p)};
    case BasisKind::SbarRow:
      if (s->t_empty(m)) return {6, B.none()};
      if (!s->t_infinite(m)) return {7, B.initial(p, s->t_max(m) + 1).unite(B.D(p - 1))};
      return {8, B.D(p)};
    case BasisKind::Vrow: break;
  }
  throw UsageError("no table clause for " + to_string(b));
}

TableClause g_clause(const SParamPtr& s, const BasisSet& b) {
  const Builder B{s};
  const int p = b.level;
  const int m = b.index;
  switch (b.kind) {
    case BasisKind::A:
      if (m == 1) return {9, B.U(p)};
      if (m == 2) return {10, B.A(p - 1, 1).unite(B.U(p))};
      if (!s->in_se(m)) return {11, B.U(p + 1).unite(B.S(p, m - 1)).unite(B.Sbar(p, m - 1))};
      return {12, B.A(p - 1, 1).unite(B.U(p + 1)).unite(B.S(p, m - 1)).unite(B.Sbar(p, m - 1))};
    case BasisKind::D: return {13, B.V()};
    case BasisKind::U: return {14, B.A(p - 1, 1).unite(B.U(p))};
    case BasisKind::Srow: {
      const int first = m % 2 == 0 || s->contains(m) ? m : m + 1;  // least n >= m in S_E
      const SymbolicSet printed = B.A(p - 1, 1).unite(B.U(p));
      const SymbolicSet frame = B.A(p - 1, 1).unite(B.U(p + 1)).unite(B.from(p, first - 1));
      if (frame == printed) return {15, frame};
      return {15, frame, printed};
    }
    case BasisKind::SbarRow: {
      if (s->t_empty(m)) return {16, B.none()};
      const int t = s->t_min(m);
      return {17, B.S(p, t - 1).unite(B.Sbar(p, t - 1)).unite(B.U(p + 1))};
    }
    case BasisKind::Vrow: break;
  }
  throw UsageError("no table clause for " + to_string(b));
}

SymbolicSet apply_table(const SymbolicSet& x, Operator op) {
  SymbolicSet out = SymbolicSet::empty(x.sparam());
  for (const auto& part : decompose_to_basis(x)) out = out.unite(table_clause(x.sparam(), op, part).rhs);
  return out;
}

}  // namespace

TableClause table_clause(const SParamPtr& s, Operator op, const BasisSet& b) {
  return op == Operator::F ? f_clause(s, b) : g_clause(s, b);
}

SymbolicSet apply_f_table(const SymbolicSet& x) { return apply_table(x, Operator::F); }
SymbolicSet apply_g_table(const SymbolicSet& x) { return apply_table(x, Operator::G); }

}  // namespace tw

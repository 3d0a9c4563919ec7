#pragma once

// Exact symbolic model of the countable algebra B_S: finite unions of the
// basis sets A_{p,m}, S_{p,m}, Sbar_{p,m}, D_p, U_p over the vertices a_{p,m}
// of the layered frame <V; R_S>.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tw/frames.hpp"
#include "tw/sparam.hpp"

namespace tw {

/// One row {a_{p,n} : n >= 1} of a symbolic set, as a subset of indices.
///
/// Indices below `threshold` are listed in `prefix` (prefix[n-1] is index n);
/// an index n >= threshold is a member iff (n in S_E ? in_tail : out_tail).
/// Canonical rows have the least threshold describing the set, and when the
/// S-parameter's tail is AllIn (so only finitely many indices lie outside
/// S_E) out_tail == in_tail.
struct LevelSet {
  int threshold = 1;
  std::vector<bool> prefix;
  bool in_tail = false;
  bool out_tail = false;

  friend bool operator==(const LevelSet&, const LevelSet&) = default;
};

enum class Mode { Empty, Full };

enum class BasisKind { A, Srow, SbarRow, D, U, Vrow };

/// A named generator. `index` is ignored for D, U and Vrow.
struct BasisSet {
  BasisKind kind = BasisKind::A;
  int level = 0;
  int index = 1;

  friend bool operator==(const BasisSet&, const BasisSet&) = default;
};

std::string to_string(const BasisSet& b);

struct Cardinality {
  bool infinite = false;
  std::size_t count = 0;

  static Cardinality finite(std::size_t k) { return {false, k}; }
  static Cardinality infinity() { return {true, 0}; }
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

std::string to_string(const Cardinality& c);

/// Result of max_level / min_level.
struct LevelExtent {
  enum class Kind { NoneEmpty, Unbounded, Level };
  Kind kind = Kind::NoneEmpty;
  int level = 0;

  static LevelExtent none() { return {Kind::NoneEmpty, 0}; }
  static LevelExtent unbounded() { return {Kind::Unbounded, 0}; }
  static LevelExtent at(int q) { return {Kind::Level, q}; }
  friend bool operator==(const LevelExtent&, const LevelExtent&) = default;
};

std::string to_string(const LevelExtent& e);

using SParamPtr = std::shared_ptr<const SParameter>;

inline SParamPtr make_sparam(SParameter s) { return std::make_shared<const SParameter>(std::move(s)); }

/// Canonical element of B_S. Immutable value type.
///
/// Levels below `lo` are uniformly `below`, levels at or above
/// lo + rows.size() are uniformly `above`, and the rows in between are
/// explicit. Canonical form: the first row differs from the `below` row, the
/// last row differs from the `above` row, every row is canonical, and
/// lo == 0 when there are no rows and both modes agree. Two sets are equal iff
/// their canonical forms are identical.
class SymbolicSet {
 public:
  static SymbolicSet empty(SParamPtr s);
  static SymbolicSet full(SParamPtr s);
  static SymbolicSet basis(SParamPtr s, const BasisSet& b);

  const SParamPtr& sparam() const { return s_; }
  Mode below() const { return below_; }
  Mode above() const { return above_; }
  int lo() const { return lo_; }
  const std::vector<LevelSet>& rows() const { return rows_; }
  /// Row at any level (mode rows outside the window).
  LevelSet row_at(int level) const;

  bool member(const VertexId& v) const;
  bool is_empty() const;
  bool is_full() const;

  SymbolicSet unite(const SymbolicSet& o) const;
  SymbolicSet intersect(const SymbolicSet& o) const;
  SymbolicSet complement() const;
  SymbolicSet minus(const SymbolicSet& o) const { return intersect(o.complement()); }

  /// Structural equality of canonical forms. Throws UsageError when the two
  /// sets belong to different S-parameters.
  bool is_equal(const SymbolicSet& o) const;

  SymbolicSet shift(int delta) const;

  Cardinality cardinality() const;
  bool atom_test() const { return cardinality() == Cardinality::finite(1); }
  LevelExtent max_level() const;
  LevelExtent min_level() const;

  /// Members lying in the window, in (level, index) order.
  std::vector<VertexId> restrict_to_window(const TruncationSpec& spec) const;

  /// Throws std::logic_error describing the first violated canonical-form
  /// invariant, if any.
  void validate() const;

  /// Round-trippable display, e.g. `D(-1) + A(0,1) + Sbar(0,3) + U(2)`.
  std::string to_string() const;
  static SymbolicSet parse(SParamPtr s, std::string_view text);

  friend bool operator==(const SymbolicSet& a, const SymbolicSet& b) {
    return *a.s_ == *b.s_ && a.below_ == b.below_ && a.above_ == b.above_ && a.lo_ == b.lo_ && a.rows_ == b.rows_;
  }

 private:
  SymbolicSet(SParamPtr s, Mode below, Mode above, int lo, std::vector<LevelSet> rows);
  void canonicalize();
  void check_same(const SymbolicSet& o) const;
  template <typename RowOp, typename ModeOp>
  SymbolicSet combine(const SymbolicSet& o, RowOp row_op, ModeOp mode_op) const;

  friend SymbolicSet apply_f(const SymbolicSet& x);
  friend SymbolicSet apply_g(const SymbolicSet& x);

  SParamPtr s_;
  Mode below_ = Mode::Empty;
  Mode above_ = Mode::Empty;
  int lo_ = 0;
  std::vector<LevelSet> rows_;
};

// Row helpers, exposed for tests.
bool row_member(const SParameter& s, const LevelSet& row, int n);
LevelSet canonical_row(const SParameter& s, LevelSet row);
LevelSet full_row();
LevelSet empty_row();

/// V_p for a single level.
SymbolicSet level_set(SParamPtr s, int p);

/// Image of X under R_S, computed from the edge clauses level by level.
SymbolicSet apply_f(const SymbolicSet& x);
/// Preimage of X under R_S.
SymbolicSet apply_g(const SymbolicSet& x);

/// Basis parts whose union is X, in canonical order: D first, then rows by
/// level (A by index, then S, then Sbar), then U. Only generator kinds
/// A, Srow, SbarRow, D and U appear.
std::vector<BasisSet> decompose_to_basis(const SymbolicSet& x);

/// Which half of the operator table a clause belongs to.
enum class Operator { F, G };

/// A clause of the f/g action table on a single generator.
struct TableClause {
  int number = 0;  // 1..17
  SymbolicSet rhs;
  /// The printed right-hand side, when it differs from the frame's value.
  std::optional<SymbolicSet> printed = std::nullopt;
};

/// Right-hand side of the table clause that applies to generator `b`.
/// Vrow is not a generator and is rejected with UsageError.
TableClause table_clause(const SParamPtr& s, Operator op, const BasisSet& b);

/// f and g via decomposition into generators and the clause table.
SymbolicSet apply_f_table(const SymbolicSet& x);
SymbolicSet apply_g_table(const SymbolicSet& x);

}  // namespace tw

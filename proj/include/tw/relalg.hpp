#pragma once

// Finite relation-type algebras given by atom structures, the axiom checks
// for nonassociative/semiassociative relation algebras, and a composition
// evaluator on B_S driven by a user-supplied term scheme.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tw/symbolic.hpp"
#include "tw/terms.hpp"

namespace tw {

inline constexpr int kMaxRelAtoms = 12;

/// Element of a finite relation-type algebra: a set of atoms as a bitmask.
using RelElem = std::uint32_t;

struct AtomStructure {
  int k = 0;
  std::vector<int> converse;  // involutive permutation of 0..k-1
  RelElem identity = 0;
  /// (a, b, c) means c <= a . b.
  std::set<std::array<int, 3>> cycles;

  /// Throws UsageError when converse is not an involution or an index is out
  /// of range; CapacityError when k > kMaxRelAtoms.
  void validate() const;
  /// Closed under (a,b,c) -> (a~,c,b) and (a,b,c) -> (c,b~,a).
  bool peircean_closed() const;
  /// Smallest Peircean-closed superset of the cycles.
  AtomStructure peircean_closure() const;

  /// `atoms k`, `conv i j`, `id i`, `cycle a b c`; `#` comments. Atoms not
  /// mentioned in a `conv` line are self-converse.
  static AtomStructure parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const AtomStructure&, const AtomStructure&) = default;
};

AtomStructure structure_a1();
/// Atoms e, d with d . d = e.
AtomStructure structure_a2();
/// Atoms e, d with d . d = e + d.
AtomStructure structure_a3();
/// Full relation algebra on an n-element base (n <= 3): atom i*n+j is the
/// pair (i, j), composed as binary relations.
AtomStructure proper_structure(int n);

class FiniteRelAlgebra {
 public:
  explicit FiniteRelAlgebra(AtomStructure as);

  int atom_count() const { return as_.k; }
  std::size_t size() const { return std::size_t{1} << as_.k; }
  const AtomStructure& structure() const { return as_; }

  RelElem zero() const { return 0; }
  RelElem one() const { return static_cast<RelElem>(size() - 1); }
  RelElem identity() const { return as_.identity; }
  RelElem complement(RelElem x) const { return one() & ~x; }
  RelElem converse(RelElem x) const;
  RelElem compose(RelElem x, RelElem y) const;
  RelElem atom_product(int a, int b) const { return table_[static_cast<std::size_t>(a * as_.k + b)]; }

  /// `{0,2}` style display of an element.
  std::string show(RelElem x) const;
  /// Composition table on atoms, one line per atom pair.
  std::string table_text() const;

 private:
  AtomStructure as_;
  std::vector<RelElem> table_;  // atom . atom
};

inline FiniteRelAlgebra expand(const AtomStructure& as) { return FiniteRelAlgebra(as); }

struct AxiomReport {
  bool boolean_reduct = false;
  bool converse_involution = false;
  bool identity = false;
  bool triangle_atoms = false;
  /// Element-level enumeration; only run for at most 2^8 elements.
  std::optional<bool> triangle_elements;
  bool semiassociative = false;
  std::optional<RelElem> semiassociative_witness;
  bool associative = false;
  bool reflexive = false;
  std::optional<RelElem> reflexive_witness;
  bool symmetric = false;
  bool subadditive = false;

  bool triangle() const { return triangle_atoms && triangle_elements.value_or(true); }
  std::string text(const FiniteRelAlgebra& a) const;
};

AxiomReport check_axioms(const FiniteRelAlgebra& a);

/// Element-level triangle laws by enumerating all triples.
bool triangle_laws_elements(const FiniteRelAlgebra& a);
/// Atom-level triangle laws read off the composition table.
bool triangle_laws_atoms(const FiniteRelAlgebra& a);

/// Closure of {0, 1, e} under all operations, re-expanded over its own atoms
/// (listed in ascending order of their masks in `a`).
FiniteRelAlgebra minimal_subalgebra(const FiniteRelAlgebra& a);

/// Isomorphic atom structures (brute force over atom permutations, k <= 8).
bool isomorphic(const AtomStructure& a, const AtomStructure& b);

struct CompositionScheme {
  Term comp;                                 // in x, y
  Term conv = Term::var(0);                  // in x
  /// `comp: <term>` and optional `conv: <term>` lines.
  static CompositionScheme parse(std::string_view text);
};

/// Evaluates the scheme's composition term with x -> X, y -> Y. Throws
/// ConfigurationError when no scheme is given.
SymbolicSet rel_compose_symbolic(const SParamPtr& s, const std::optional<CompositionScheme>& scheme,
                                 const SymbolicSet& x, const SymbolicSet& y);

}  // namespace tw

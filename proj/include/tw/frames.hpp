#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tw/index_set.hpp"
#include "tw/sparam.hpp"

namespace tw {

/// Vertex a_{level,index} of the layered frame.
struct VertexId {
  int level = 0;
  int index = 1;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

std::string to_string(const VertexId& v);

/// Finite window of levels [level_lo, level_hi] and indices [1, index_max].
struct TruncationSpec {
  int level_lo = -8;
  int level_hi = 8;
  int index_max = 48;

  std::size_t vertex_count() const {
    return static_cast<std::size_t>(level_hi - level_lo + 1) * static_cast<std::size_t>(index_max);
  }
  bool contains(const VertexId& v) const {
    return v.level >= level_lo && v.level <= level_hi && v.index >= 1 && v.index <= index_max;
  }
  /// Window with `d` levels removed at each end and `d` fewer indices.
  /// Returns nullopt when nothing is left.
  std::optional<TruncationSpec> shrunk(int d) const;

  friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

inline constexpr std::size_t kDefaultVertexBudget = 4096;

/// A finite directed graph. Immutable after construction.
///
/// Vertices are kept in canonical (level, index) order and referred to by
/// ordinal. Successor lists are sorted; a dense adjacency matrix backs the
/// complex-algebra operations.
class Frame {
 public:
  /// `edges` are (source ordinal, target ordinal) pairs. Throws UsageError on
  /// unsorted/duplicate vertices, out-of-range ordinals or duplicate edges.
  Frame(std::vector<VertexId> vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  /// Same, from per-vertex successor sets.
  Frame(std::vector<VertexId> vertices, std::vector<IndexSet> successor_sets);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const VertexId& vertex(std::size_t i) const { return vertices_[i]; }
  std::optional<std::size_t> ordinal(const VertexId& v) const;

  const std::vector<std::uint32_t>& successors(std::size_t i) const { return succ_[i]; }
  bool has_edge(std::size_t from, std::size_t to) const { return out_[from].contains(to); }
  bool has_edge(const VertexId& from, const VertexId& to) const;
  std::size_t edge_count() const;

  /// Image of X under the edge relation.
  IndexSet complex_f(const IndexSet& x) const;
  /// Preimage of X under the edge relation.
  IndexSet complex_g(const IndexSet& x) const;

  IndexSet empty_set() const { return IndexSet(size()); }
  IndexSet all() const { return IndexSet::full(size()); }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.vertices_ == b.vertices_ && a.succ_ == b.succ_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<IndexSet> out_;  // out_[i] = successors of i
  std::vector<IndexSet> in_;   // in_[i]  = predecessors of i

  void check_vertices() const;
  void finish();
};

/// Restriction of the layered frame <V; R_S> to the given window.
/// Throws CapacityError when the window exceeds `vertex_budget`.
Frame build_truncation(const TruncationSpec& spec, const SParameter& s,
                       std::size_t vertex_budget = kDefaultVertexBudget);

/// Edge predicate of R_S on the infinite frame.
bool rs_edge(const SParameter& s, const VertexId& from, const VertexId& to);

bool is_reflexive(const Frame& f);
/// Every ordered pair related in at least one direction (so also reflexive).
bool is_total(const Frame& f);

/// Subframe induced by the vertices lying in `spec`.
Frame restrict_frame(const Frame& f, const TruncationSpec& spec);

/// Complex algebra of a frame with explicit f/g tables on atoms.
class FiniteTenseAlgebra {
 public:
  /// Tables give, per atom, its image under f (resp. g). Throws UsageError
  /// unless the tables are conjugate.
  FiniteTenseAlgebra(std::vector<IndexSet> f_table, std::vector<IndexSet> g_table);

  std::size_t atom_count() const { return f_table_.size(); }
  const IndexSet& f_atom(std::size_t a) const { return f_table_[a]; }
  const IndexSet& g_atom(std::size_t a) const { return g_table_[a]; }

  IndexSet zero() const { return IndexSet(atom_count()); }
  IndexSet one() const { return IndexSet::full(atom_count()); }
  IndexSet f(const IndexSet& x) const;
  IndexSet g(const IndexSet& x) const;

  friend bool operator==(const FiniteTenseAlgebra&, const FiniteTenseAlgebra&) = default;

 private:
  std::vector<IndexSet> f_table_;
  std::vector<IndexSet> g_table_;
};

/// Cm(F): atom i's f-image is the successor set of vertex i.
FiniteTenseAlgebra as_finite_algebra(const Frame& f);

/// The two-element algebra with identity operators.
FiniteTenseAlgebra t0_algebra();

/// Graphviz rendering; node names are `a_<level>_<index>`, quoted so that
/// negative levels stay valid identifiers.
std::string export_dot(const Frame& f, bool suppress_loops);

/// Line-oriented frame file: `frame <n>`, `v <level> <index>` lines in
/// canonical order, `e <src> <dst>` lines sorted.
std::string write_frame_file(const Frame& f);
Frame read_frame_file(std::string_view text);

}  // namespace tw

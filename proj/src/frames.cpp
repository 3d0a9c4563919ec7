#include "tw/frames.hpp"

#include <algorithm>
#include <sstream>

#include "tw/error.hpp"

namespace tw {

std::string to_string(const VertexId& v) {
  return "a(" + std::to_string(v.level) + "," + std::to_string(v.index) + ")";
}

std::optional<TruncationSpec> TruncationSpec::shrunk(int d) const {
  TruncationSpec out{level_lo + d, level_hi - d, index_max - d};
  if (out.level_lo > out.level_hi || out.index_max < 1) return std::nullopt;
  return out;
}

void Frame::check_vertices() const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].index < 1) throw UsageError("vertex index must be >= 1: " + to_string(vertices_[i]));
    if (i > 0 && !(vertices_[i - 1] < vertices_[i]))
      throw UsageError("vertices must be distinct and in (level, index) order at " + to_string(vertices_[i]));
  }
}

// Derives predecessor sets and sorted successor lists from out_.
void Frame::finish() {
  const std::size_t n = vertices_.size();
  succ_.assign(n, {});
  in_.assign(n, IndexSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    out_[i].for_each([&](std::size_t j) {
      succ_[i].push_back(static_cast<std::uint32_t>(j));
      in_[j].insert(i);
    });
  }
}

Frame::Frame(std::vector<VertexId> vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : vertices_(std::move(vertices)) {
  check_vertices();
  const std::size_t n = vertices_.size();
  out_.assign(n, IndexSet(n));
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw UsageError("edge endpoint out of range");
    if (out_[a].contains(b)) throw UsageError("duplicate edge " + std::to_string(a) + " -> " + std::to_string(b));
    out_[a].insert(b);
  }
  finish();
}

Frame::Frame(std::vector<VertexId> vertices, std::vector<IndexSet> successor_sets)
    : vertices_(std::move(vertices)), out_(std::move(successor_sets)) {
  check_vertices();
  if (out_.size() != vertices_.size()) throw UsageError("one successor set per vertex required");
  for (const auto& row : out_)
    if (row.universe() != vertices_.size()) throw UsageError("successor set has wrong universe");
  finish();
}

std::optional<std::size_t> Frame::ordinal(const VertexId& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Frame::has_edge(const VertexId& from, const VertexId& to) const {
  auto a = ordinal(from);
  auto b = ordinal(to);
  return a && b && has_edge(*a, *b);
}

std::size_t Frame::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : succ_) total += s.size();
  return total;
}

IndexSet Frame::complex_f(const IndexSet& x) const {
  IndexSet out(size());
  x.for_each([&](std::size_t i) { out |= out_[i]; });
  return out;
}

IndexSet Frame::complex_g(const IndexSet& x) const {
  IndexSet out(size());
  x.for_each([&](std::size_t i) { out |= in_[i]; });
  return out;
}

bool rs_edge(const SParameter& s, const VertexId& from, const VertexId& to) {
  if (from.level > to.level) return true;
  if (from.level == to.level && from.index >= to.index) return true;
  if (from.index == 1 && to.level == from.level + 1 && s.in_se(to.index)) return true;
  return from.level == to.level && to.index == from.index + 1;
}

Frame build_truncation(const TruncationSpec& spec, const SParameter& s, std::size_t vertex_budget) {
  if (spec.level_lo > spec.level_hi || spec.index_max < 1) throw UsageError("empty truncation window");
  if (spec.vertex_count() > vertex_budget)
    throw CapacityError("truncation window has " + std::to_string(spec.vertex_count()) +
                        " vertices, budget is " + std::to_string(vertex_budget));
  std::vector<VertexId> vertices;
  vertices.reserve(spec.vertex_count());
  for (int p = spec.level_lo; p <= spec.level_hi; ++p)
    for (int m = 1; m <= spec.index_max; ++m) vertices.push_back({p, m});

  const std::size_t n = vertices.size();
  std::vector<IndexSet> rows(n, IndexSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (rs_edge(s, vertices[a], vertices[b])) rows[a].insert(b);
  return Frame(std::move(vertices), std::move(rows));
}

bool is_reflexive(const Frame& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f.has_edge(i, i)) return false;
  return true;
}

bool is_total(const Frame& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i; j < f.size(); ++j)
      if (!f.has_edge(i, j) && !f.has_edge(j, i)) return false;
  return true;
}

Frame restrict_frame(const Frame& f, const TruncationSpec& spec) {
  std::vector<VertexId> vertices;
  std::vector<std::size_t> old_to_new(f.size(), SIZE_MAX);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (spec.contains(f.vertex(i))) {
      old_to_new[i] = vertices.size();
      vertices.push_back(f.vertex(i));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (old_to_new[i] == SIZE_MAX) continue;
    for (auto j : f.successors(i))
      if (old_to_new[j] != SIZE_MAX) edges.emplace_back(old_to_new[i], old_to_new[j]);
  }
  return Frame(std::move(vertices), edges);
}

FiniteTenseAlgebra::FiniteTenseAlgebra(std::vector<IndexSet> f_table, std::vector<IndexSet> g_table)
    : f_table_(std::move(f_table)), g_table_(std::move(g_table)) {
  const std::size_t n = f_table_.size();
  if (g_table_.size() != n) throw UsageError("f and g tables differ in size");
  for (std::size_t a = 0; a < n; ++a) {
    if (f_table_[a].universe() != n || g_table_[a].universe() != n) throw UsageError("table row has wrong universe");
    for (std::size_t b = 0; b < n; ++b)
      if (f_table_[a].contains(b) != g_table_[b].contains(a))
        throw UsageError("f and g tables are not conjugate at atoms " + std::to_string(a) + ", " + std::to_string(b));
  }
}

IndexSet FiniteTenseAlgebra::f(const IndexSet& x) const {
  IndexSet out(atom_count());
  x.for_each([&](std::size_t a) { out |= f_table_[a]; });
  return out;
}

IndexSet FiniteTenseAlgebra::g(const IndexSet& x) const {
  IndexSet out(atom_count());
  x.for_each([&](std::size_t a) { out |= g_table_[a]; });
  return out;
}

FiniteTenseAlgebra as_finite_algebra(const Frame& fr) {
  if (fr.size() == 0) throw UsageError("complex algebra of an empty frame");
  const std::size_t n = fr.size();
  std::vector<IndexSet> f_table(n, IndexSet(n));
  std::vector<IndexSet> g_table(n, IndexSet(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (auto b : fr.successors(a)) {
      f_table[a].insert(b);
      g_table[b].insert(a);
    }
  }
  return FiniteTenseAlgebra(std::move(f_table), std::move(g_table));
}

FiniteTenseAlgebra t0_algebra() {
  return FiniteTenseAlgebra({IndexSet(1, {0})}, {IndexSet(1, {0})});
}

namespace {
std::string dot_name(const VertexId& v) {
  return "\"a_" + std::to_string(v.level) + "_" + std::to_string(v.index) + "\"";
}
}  // namespace

std::string export_dot(const Frame& f, bool suppress_loops) {
  std::ostringstream out;
  out << "digraph frame {\n";
  for (const auto& v : f.vertices()) out << "  " << dot_name(v) << ";\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (auto j : f.successors(i)) {
      if (suppress_loops && j == i) continue;
      out << "  " << dot_name(f.vertex(i)) << " -> " << dot_name(f.vertex(j)) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string write_frame_file(const Frame& f) {
  std::ostringstream out;
  out << "frame " << f.size() << '\n';
  for (const auto& v : f.vertices()) out << "v " << v.level << ' ' << v.index << '\n';
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto j : f.successors(i)) out << "e " << i << ' ' << j << '\n';
  return out.str();
}

Frame read_frame_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> declared;
  std::vector<VertexId> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("frame file line " + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "frame") {
      if (declared) fail("duplicate header");
      std::size_t n = 0;
      if (!(ls >> n)) fail("bad vertex count");
      declared = n;
    } else if (tag == "v") {
      if (!declared) fail("vertex before header");
      if (!edges.empty()) fail("vertex after edges");
      VertexId v;
      if (!(ls >> v.level >> v.index)) fail("bad vertex line");
      if (v.index < 1) fail("vertex index must be >= 1");
      if (!vertices.empty() && !(vertices.back() < v)) fail("vertices duplicated or out of canonical order");
      vertices.push_back(v);
    } else if (tag == "e") {
      if (!declared) fail("edge before header");
      std::size_t a = 0, b = 0;
      if (!(ls >> a >> b)) fail("bad edge line");
      if (a >= vertices.size() || b >= vertices.size()) fail("edge endpoint out of range");
      if (!edges.empty() && !(edges.back() < std::make_pair(a, b))) fail("edges duplicated or unsorted");
      edges.emplace_back(a, b);
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (!declared) throw ParseError("frame file has no header");
  if (*declared != vertices.size()) throw ParseError("header declares " + std::to_string(*declared) + " vertices, found " + std::to_string(vertices.size()));
  return Frame(std::move(vertices), edges);
}

}  // namespace tw

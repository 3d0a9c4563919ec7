#include <doctest.h>

#include "tw/error.hpp"
#include "tw/frames.hpp"

using namespace tw;

namespace {

// Edge relation written straight from the definition, for comparison.
bool edge_by_definition(const SParameter& s, VertexId a, VertexId b) {
  const int p = a.level, m = a.index, q = b.level, n = b.index;
  const bool in_se = n % 2 == 0 || s.contains(n);
  return p > q || (p == q && m >= n) || (m == 1 && q == p + 1 && in_se) || (q == p && n == m + 1);
}

const SParameter kFamily[] = {SParameter::empty(), SParameter::parse("{3}"), SParameter::parse("{3,7}"),
                              SParameter::all_odd(), SParameter::parse("{3} tail=in bound=5")};

}  // namespace

TEST_CASE("rs_edge matches the defining clauses") {
  for (const auto& s : kFamily)
    for (int p = -2; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q)
        for (int m = 1; m <= 12; ++m)
          for (int n = 1; n <= 12; ++n) CHECK(rs_edge(s, {p, m}, {q, n}) == edge_by_definition(s, {p, m}, {q, n}));
}

TEST_CASE("drawn edges of the figure") {
  const SParameter with3 = SParameter::parse("{3}");
  const SParameter without3 = SParameter::empty();
  CHECK(rs_edge(with3, {1, 1}, {0, 1}));
  CHECK(rs_edge(with3, {1, 1}, {0, 2}));
  CHECK(rs_edge(with3, {1, 1}, {-1, 1}));
  CHECK(rs_edge(with3, {1, 3}, {1, 2}));
  CHECK(rs_edge(with3, {1, 3}, {1, 1}));
  CHECK(rs_edge(with3, {0, 1}, {1, 3}));
  CHECK_FALSE(rs_edge(without3, {0, 1}, {1, 3}));
  CHECK(rs_edge(without3, {0, 1}, {1, 2}));
}

TEST_CASE("truncations are reflexive and total") {
  for (const auto& s : kFamily) {
    const Frame f = build_truncation({-2, 2, 10}, s);
    CHECK(f.size() == 50);
    CHECK(is_reflexive(f));
    CHECK(is_total(f));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) CHECK(f.has_edge(i, j) == edge_by_definition(s, f.vertex(i), f.vertex(j)));
  }
}

TEST_CASE("vertex budget") {
  CHECK_THROWS_AS(build_truncation({-8, 8, 48}, SParameter::empty(), 100), CapacityError);
  CHECK(TruncationSpec{-8, 8, 48}.vertex_count() == 816);
  CHECK(TruncationSpec{-8, 8, 48}.shrunk(2) == TruncationSpec{-6, 6, 46});
  CHECK_FALSE(TruncationSpec{0, 1, 4}.shrunk(1).has_value());
}

TEST_CASE("frame file round trip") {
  const Frame f = build_truncation({-1, 1, 5}, SParameter::parse("{3}"));
  const std::string text = write_frame_file(f);
  CHECK(read_frame_file(text) == f);
  CHECK(write_frame_file(read_frame_file(text)) == text);
  CHECK_THROWS_AS(read_frame_file("frame 2\nv 0 1\n"), ParseError);
  CHECK_THROWS_AS(read_frame_file("frame 1\nv 0 1\ne 0 3\n"), Error);
}

TEST_CASE("DOT export") {
  const Frame f = build_truncation({0, 1, 2}, SParameter::empty());
  const std::string with = export_dot(f, false);
  const std::string without = export_dot(f, true);
  CHECK(with.rfind("digraph", 0) == 0);
  CHECK(with.find("\"a_0_1\" -> \"a_0_1\"") != std::string::npos);
  CHECK(without.find("\"a_0_1\" -> \"a_0_1\"") == std::string::npos);
  CHECK(without.find("\"a_0_1\" -> \"a_1_2\"") != std::string::npos);
  CHECK(export_dot(f, true) == without);
  const Frame neg = build_truncation({-1, -1, 1}, SParameter::empty());
  CHECK(export_dot(neg, false).find("\"a_-1_1\"") != std::string::npos);
}

TEST_CASE("complex algebra operations are image and preimage") {
  const Frame f = build_truncation({-1, 1, 4}, SParameter::parse("{3}"));
  const FiniteTenseAlgebra a = as_finite_algebra(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    IndexSet x(f.size(), {i});
    IndexSet img(f.size()), pre(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f.has_edge(i, j)) img.insert(j);
      if (f.has_edge(j, i)) pre.insert(j);
    }
    CHECK(a.f(x) == img);
    CHECK(a.g(x) == pre);
    CHECK(f.complex_f(x) == img);
    CHECK(f.complex_g(x) == pre);
  }
  // Conjugacy on a sample of pairs.
  for (std::size_t i = 0; i < f.size(); i += 3)
    for (std::size_t j = 0; j < f.size(); j += 2) {
      IndexSet x(f.size(), {i, (i + 5) % f.size()});
      IndexSet y(f.size(), {j});
      CHECK((a.f(x) & y).empty() == (x & a.g(y)).empty());
    }
}

TEST_CASE("T0 and non-conjugate tables") {
  const FiniteTenseAlgebra t0 = t0_algebra();
  CHECK(t0.atom_count() == 1);
  CHECK(t0.f(t0.one()) == t0.one());
  CHECK(t0.g(t0.zero()) == t0.zero());
  CHECK_THROWS_AS(FiniteTenseAlgebra({IndexSet(2, {0, 1}), IndexSet(2, {1})}, {IndexSet(2, {0}), IndexSet(2, {1})}),
                  UsageError);
}

TEST_CASE("loops-only frame is reflexive but not total") {
  const Frame f({{0, 1}, {0, 2}}, std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
  CHECK(is_reflexive(f));
  CHECK_FALSE(is_total(f));
}

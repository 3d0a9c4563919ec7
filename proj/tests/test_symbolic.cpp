#include <doctest.h>

#include <random>

#include "tw/audit.hpp"
#include "tw/error.hpp"
#include "tw/oracle.hpp"
#include "tw/symbolic.hpp"

using namespace tw;

namespace {

std::vector<SParamPtr> family() {
  std::vector<SParamPtr> out;
  for (const auto& s : default_family()) out.push_back(make_sparam(s));
  return out;
}

SymbolicSet B(const SParamPtr& s, BasisKind k, int p, int m = 1) { return SymbolicSet::basis(s, {k, p, m}); }

// Membership of a_{p,n} in each generator, straight from the definitions.
bool in_generator(const SParameter& s, BasisKind k, int p, int m, VertexId v) {
  const bool se = v.index % 2 == 0 || s.contains(v.index);
  switch (k) {
    case BasisKind::A: return v.level == p && v.index == m;
    case BasisKind::Srow: return v.level == p && v.index >= m && v.index > 1 && se;
    case BasisKind::SbarRow: return v.level == p && v.index >= m && v.index > 1 && !se;
    case BasisKind::D: return v.level <= p;
    case BasisKind::U: return v.level >= p;
    case BasisKind::Vrow: return v.level == p;
  }
  return false;
}

}  // namespace

TEST_CASE("generators contain exactly their defining vertices") {
  for (const auto& s : family())
    for (BasisKind k : {BasisKind::A, BasisKind::Srow, BasisKind::SbarRow, BasisKind::D, BasisKind::U, BasisKind::Vrow})
      for (int p = -1; p <= 1; ++p)
        for (int m = 1; m <= 9; ++m) {
          const SymbolicSet x = B(s, k, p, m);
          x.validate();
          for (int q = -3; q <= 3; ++q)
            for (int n = 1; n <= 30; ++n) CHECK(x.member({q, n}) == in_generator(*s, k, p, m, {q, n}));
        }
}

TEST_CASE("row intersections") {
  const SParamPtr s = make_sparam(SParameter::parse("{3}"));
  CHECK(B(s, BasisKind::Srow, 0, 2).intersect(B(s, BasisKind::Srow, 0, 5)) == B(s, BasisKind::Srow, 0, 5));
  CHECK(B(s, BasisKind::Srow, 0, 2).intersect(B(s, BasisKind::Srow, 1, 2)).is_empty());
  CHECK(B(s, BasisKind::Srow, 0, 2).intersect(B(s, BasisKind::SbarRow, 0, 2)).is_empty());
}

TEST_CASE("printed clause 15 is kept next to the frame value") {
  const SParamPtr s = make_sparam(SParameter::empty());
  const TableClause c = table_clause(s, Operator::G, {BasisKind::Srow, 0, 4});
  CHECK(c.number == 15);
  REQUIRE(c.printed.has_value());
  CHECK(*c.printed == SymbolicSet::parse(s, "A(-1,1) + U(0)"));
  CHECK(c.rhs == apply_g(B(s, BasisKind::Srow, 0, 4)));
  // For m <= 2 the printed form is the frame's value.
  const TableClause low = table_clause(s, Operator::G, {BasisKind::Srow, 0, 2});
  CHECK_FALSE(low.printed.has_value());
  CHECK(low.rhs == SymbolicSet::parse(s, "A(-1,1) + U(0)"));
  CHECK_THROWS_AS(table_clause(s, Operator::F, {BasisKind::Vrow, 0, 1}), UsageError);
}

TEST_CASE("display syntax round trips and is order independent") {
  for (const auto& s : family()) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
      const SymbolicSet x = random_element(s, rng);
      x.validate();
      CHECK(SymbolicSet::parse(s, x.to_string()) == x);
    }
    CHECK(SymbolicSet::parse(s, "U(2) + A(0,1) + D(-1)") == SymbolicSet::parse(s, "D(-1) + A(0,1) + U(2)"));
  }
  const SParamPtr s = make_sparam(SParameter::empty());
  CHECK_THROWS_AS(SymbolicSet::parse(s, "A(0)"), ParseError);
  CHECK_THROWS_AS(SymbolicSet::parse(s, "Q(1,2)"), ParseError);
}

TEST_CASE("Boolean operations agree with the truncation") {
  for (const auto& s : family()) {
    const TruncationOracle o(s, {-6, 6, 32});
    std::mt19937_64 rng(9);
    for (int i = 0; i < 150; ++i) {
      const SymbolicSet x = random_element(s, rng);
      const SymbolicSet y = random_element(s, rng);
      const IndexSet ex = o.embed(x), ey = o.embed(y);
      CHECK(o.agrees(x.unite(y), ex | ey, 0));
      CHECK(o.agrees(x.intersect(y), ex & ey, 0));
      CHECK(o.agrees(x.complement(), ex.complement(), 0));
      CHECK(o.agrees(x.minus(y), ex - ey, 0));
      CHECK(x.is_equal(y) == (x == y));
    }
  }
}

TEST_CASE("f and g agree with the truncation and with the table") {
  for (const auto& s : family()) {
    const TruncationOracle o(s, TruncationSpec{});
    std::mt19937_64 rng(13);
    for (int i = 0; i < 150; ++i) {
      const SymbolicSet x = random_element(s, rng);
      const IndexSet e = o.embed(x);
      CHECK(o.agrees(apply_f(x), o.f(e), 1));
      CHECK(o.agrees(apply_g(x), o.g(e), 1));
      CHECK(apply_f(x) == apply_f_table(x));
      CHECK(apply_g(x) == apply_g_table(x));
    }
  }
}

TEST_CASE("decomposition is a partition of the set into generators") {
  for (const auto& s : family()) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
      const SymbolicSet x = random_element(s, rng);
      SymbolicSet acc = SymbolicSet::empty(s);
      for (const auto& b : decompose_to_basis(x)) {
        const SymbolicSet part = SymbolicSet::basis(s, b);
        CHECK(acc.intersect(part).is_empty());
        acc = acc.unite(part);
      }
      CHECK(acc == x);
    }
  }
}

TEST_CASE("shift is an automorphism") {
  for (const auto& s : family()) {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
      const SymbolicSet x = random_element(s, rng);
      for (int d : {-2, 1, 3}) {
        CHECK(apply_f(x.shift(d)) == apply_f(x).shift(d));
        CHECK(apply_g(x.shift(d)) == apply_g(x).shift(d));
        CHECK(x.shift(d).shift(-d) == x);
      }
    }
  }
}

TEST_CASE("cardinality and level extents") {
  const SParamPtr s = make_sparam(SParameter::parse("{3,7}"));
  CHECK(SymbolicSet::parse(s, "A(0,1) + A(2,5)").cardinality() == Cardinality::finite(2));
  CHECK(SymbolicSet::parse(s, "A(0,1)").atom_test());
  CHECK(SymbolicSet::parse(s, "Sbar(0,9)").cardinality().infinite);
  CHECK(SymbolicSet::parse(s, "D(1) + A(3,2)").max_level() == LevelExtent::at(3));
  CHECK(SymbolicSet::parse(s, "D(1)").min_level() == LevelExtent::unbounded());
  CHECK(SymbolicSet::empty(s).max_level() == LevelExtent::none());
  CHECK(SymbolicSet::full(s).is_full());
  // For S = {3} with tail out every Sbar row from 5 on is infinite; for O it is empty.
  const SParamPtr o = make_sparam(SParameter::all_odd());
  CHECK(SymbolicSet::basis(o, {BasisKind::SbarRow, 0, 1}).is_empty());
}

TEST_CASE("mixing parameters is a usage error") {
  const SParamPtr a = make_sparam(SParameter::empty());
  const SParamPtr b = make_sparam(SParameter::all_odd());
  CHECK_THROWS_AS(SymbolicSet::full(a).is_equal(SymbolicSet::full(b)), UsageError);
}

TEST_CASE("S-parameter syntax") {
  CHECK(SParameter::parse("O") == SParameter::all_odd());
  CHECK(SParameter::parse("empty") == SParameter::empty());
  CHECK(SParameter::parse("S = {3,7}") == SParameter::parse("{3,7} tail=out bound=7"));
  CHECK(SParameter::parse("{3} tail=in bound=5").contains(7));
  CHECK_FALSE(SParameter::parse("{3} tail=in bound=5").contains(5));
  const SParameter s = SParameter::parse("{3} tail=in bound=5");
  CHECK(SParameter::parse(s.to_string()) == s);
  CHECK_THROWS_AS(SParameter::parse("{4}"), Error);
}

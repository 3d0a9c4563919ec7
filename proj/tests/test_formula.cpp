#include <doctest.h>

#include <memory>

#include "tw/error.hpp"
#include "tw/formula.hpp"
#include "tw/search.hpp"

using namespace tw;

namespace {

std::vector<std::shared_ptr<const FiniteTenseAlgebra>> small_algebras() {
  std::vector<std::shared_ptr<const FiniteTenseAlgebra>> out;
  out.push_back(std::make_shared<const FiniteTenseAlgebra>(t0_algebra()));
  for (int k = 2; k <= 3; ++k)
    for (const auto& f : enumerate_total_frames(k)) out.push_back(std::make_shared<const FiniteTenseAlgebra>(as_finite_algebra(f)));
  // A non-total frame and a small truncation of R_S.
  const Frame loops({{0, 1}, {0, 2}, {0, 3}}, std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}, {2, 2}, {1, 2}});
  out.push_back(std::make_shared<const FiniteTenseAlgebra>(as_finite_algebra(loops)));
  out.push_back(std::make_shared<const FiniteTenseAlgebra>(as_finite_algebra(build_truncation({0, 1, 3}, SParameter::parse("{3}")))));
  return out;
}

}  // namespace

TEST_CASE("formula syntax round trips") {
  for (const Formula& f : {alpha_formula(), phi_formula(), tau_formula(3), tau_formula(6)}) {
    CHECK(to_string(parse_formula(to_string(f))) == to_string(f));
    CHECK(f.free_vars() == std::vector<int>{0});
  }
  const Formula g = parse_formula("exists y . (x & y = y && y != 0) || !(f(x) = x)");
  CHECK(g.free_vars() == std::vector<int>{0});
  CHECK(parse_formula("forall x . x | ~x = 1").is_closed());
  CHECK_THROWS_AS(parse_formula("x = "), ParseError);
  CHECK_THROWS_AS(parse_formula("exists . x = 0"), ParseError);
}

TEST_CASE("pattern evaluation agrees with brute force on small algebras") {
  const std::vector<Formula> formulas{
      alpha_formula(),
      phi_formula(),
      tau_formula(3),
      tau_formula(4),
      parse_formula("exists_atom y . exists_atom z . x = y | z"),
      parse_formula("forall_atom y . (f(x) & y = 0 || f(x) & y = f(x))"),
      parse_formula("exists y . (y != 0 && y != 1 && f(y) = y)"),
      parse_formula("!(x = 0) && forall_atom y . (x & y = 0 || g(y) & x != 0)"),
  };
  for (const auto& a : small_algebras()) {
    const FiniteCarrier c(a);
    const AlgebraHandle h = AlgebraHandle::finite(a);
    for (const auto& x : c.elements())
      for (const auto& f : formulas) CHECK(eval_formula(f, h, {x}) == eval_formula_bruteforce(f, c, {x}));
  }
}

TEST_CASE("alpha holds exactly at atoms") {
  for (const auto& param : {SParameter::empty(), SParameter::parse("{3,7}")}) {
    const SParamPtr s = make_sparam(param);
    const AlgebraHandle h = AlgebraHandle::symbolic(s);
    for (const char* text : {"A(0,1)", "A(2,9)", "A(-1,4)"})
      CHECK(eval_formula(alpha_formula(), h, {SymbolicSet::parse(s, text)}));
    for (const char* text : {"A(0,1) + A(0,2)", "S(0,2)", "D(0)", "Sbar(1,3)"})
      CHECK_FALSE(eval_formula(alpha_formula(), h, {SymbolicSet::parse(s, text)}));
    CHECK_FALSE(eval_formula(alpha_formula(), h, {SymbolicSet::empty(s)}));
  }
}

TEST_CASE("phi at A_{p,1}") {
  for (const auto& param : {SParameter::empty(), SParameter::parse("{3}"), SParameter::all_odd()}) {
    const SParamPtr s = make_sparam(param);
    const AlgebraHandle h = AlgebraHandle::symbolic(s);
    for (int p = -2; p <= 2; ++p) CHECK(eval_formula(phi_formula(), h, {SymbolicSet::basis(s, {BasisKind::A, p, 1})}));
    CHECK_FALSE(eval_formula(phi_formula(), h, {SymbolicSet::parse(s, "A(0,3) + A(0,5)")}));
  }
}

TEST_CASE("unrestricted quantifiers are refused on B_S") {
  const SParamPtr s = make_sparam(SParameter::empty());
  const AlgebraHandle h = AlgebraHandle::symbolic(s);
  CHECK_THROWS_AS(eval_formula(parse_formula("exists y . f(y) = y"), h, {}), UnsupportedQuery);
  CHECK_THROWS_AS(eval_formula(parse_formula("exists_atom y . f(y) = y"), h, {}), UnsupportedQuery);
}

TEST_CASE("named formulas") {
  CHECK(to_string(parse_formula("tau5")) == to_string(tau_formula(5)));
  CHECK(to_string(parse_formula("phi && x != 0")) == to_string(phi_formula() && Formula::neq(Term::var(0), Term::zero())));
  CHECK(to_string(parse_formula("alpha")) == to_string(alpha_formula()));
  CHECK_THROWS_AS(parse_formula("tau2"), ParseError);
}

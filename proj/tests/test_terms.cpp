#include <doctest.h>

#include <random>

#include "tw/audit.hpp"
#include "tw/oracle.hpp"
#include "tw/terms.hpp"

using namespace tw;

TEST_CASE("printing and parsing round trip") {
  const Term x = Term::var(0), y = Term::var(1);
  for (const Term& t : {x, ~x, x | y, x & ~y, Term::f(x) & Term::g(~y), Term::f_pow(3, x | Term::zero()),
                        Term::g_pow(2, Term::one()) & x, sigma_term(), beta_term(), nu_term(5)}) {
    CHECK(parse_term(to_string(t)) == t);
  }
  CHECK(parse_term("f^3(x)") == Term::f(Term::f(Term::f(Term::var(0)))));
  CHECK(parse_term("sigma") == sigma_term());
  CHECK(parse_term("nu4(y)") != nu_term(4));
  CHECK(parse_term("x | y & z") == (x | (y & Term::var(2))));
  CHECK_THROWS_AS(parse_term("f(x"), ParseError);
  CHECK_THROWS_AS(parse_term("x +"), ParseError);
  CHECK_THROWS_AS(nu_term(2), UsageError);
}

TEST_CASE("depth and arity") {
  const Term x = Term::var(0);
  CHECK(Term::f_pow(3, x).depth() == 3);
  CHECK((Term::f(x) | Term::g_pow(2, x)).depth() == 2);
  CHECK((x & Term::var(2)).arity() == 3);
  CHECK(Term::one().arity() == 0);
  CHECK(beta_term().depth() == 4);
  // nu_n is f applied to nu_{n-1}, so depth grows by one per step.
  for (int n = 5; n <= 12; ++n) CHECK(nu_term(n).depth() == nu_term(n - 1).depth() + 1);
}

TEST_CASE("sigma and nu on generators") {
  for (const auto& param : default_family()) {
    const SParamPtr s = make_sparam(param);
    const SymbolicCarrier c(s);
    for (int p = -2; p <= 2; ++p) {
      const SymbolicSet a1 = SymbolicSet::basis(s, {BasisKind::A, p, 1});
      CHECK(eval_term(sigma_term(), c, {a1}) == SymbolicSet::basis(s, {BasisKind::A, p, 2}));
      for (int n = 3; n <= 14; ++n)
        CHECK(eval_term(nu_term(n), c, {a1}) == SymbolicSet::basis(s, {BasisKind::A, p, n}));
    }
  }
}

TEST_CASE("finite and symbolic evaluation agree on a truncation") {
  const SParamPtr s = make_sparam(SParameter::parse("{3,7}"));
  const TruncationOracle o(s, term_suite_window());
  std::mt19937_64 rng(21);
  const Term x = Term::var(0), y = Term::var(1);
  const std::vector<Term> terms{Term::f(x & ~Term::g(y)), Term::g_pow(2, x | y), beta_term(), sigma_term(),
                                Term::f_pow(2, ~x) & Term::g(y)};
  for (int i = 0; i < 20; ++i) {
    const SymbolicSet a = random_element(s, rng);
    const SymbolicSet b = random_element(s, rng);
    for (const Term& u : terms)
      CHECK(o.agrees(eval_term(u, SymbolicCarrier(s), {a, b}), o.eval(u, {a, b}), u.depth()));
  }
}

TEST_CASE("unbound variables are usage errors") {
  const SParamPtr s = make_sparam(SParameter::empty());
  CHECK_THROWS_AS(eval_term(Term::var(1), SymbolicCarrier(s), {SymbolicSet::empty(s)}), UsageError);
}

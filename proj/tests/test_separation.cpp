#include <doctest.h>

#include "tw/audit.hpp"
#include "tw/error.hpp"
#include "tw/separation.hpp"

using namespace tw;

TEST_CASE("tau_n at A_{0,1} follows membership of n in S_E") {
  for (const auto& param : default_family()) {
    const SParamPtr s = make_sparam(param);
    for (int n = 3; n <= 12; ++n) {
      CHECK(eval_tau(s, n, SymbolicSet::basis(s, {BasisKind::A, 0, 1})) == param.in_se(n));
      CHECK_FALSE(eval_tau(s, n, SymbolicSet::basis(s, {BasisKind::A, 0, 2})));
    }
  }
}

TEST_CASE("witness search") {
  const SParamPtr s = make_sparam(SParameter::parse("{3}"));
  const TauSearch hit = exists_tau_witness(s, 3, 16);
  REQUIRE(hit.found());
  CHECK(*hit.witness_m == 1);
  CHECK(to_string(hit) == "Witness(A(0,1))");
  const TauSearch miss = exists_tau_witness(s, 5, 16);
  CHECK_FALSE(miss.found());
  CHECK(to_string(miss) == "NoneUpTo(16)");
  CHECK(exists_tau_witness(s, 5, 16, 4) == miss);
  CHECK_THROWS_AS(exists_tau_witness(s, 2, 16), UsageError);
}

TEST_CASE("distinguish") {
  const SeparationReport r = distinguish(SParameter::parse("{3}"), SParameter::parse("{5}"));
  CHECK(r.witness_n == 3);
  CHECK(r.verdict == Verdict::Separated);
  CHECK(r.s_truth.found());
  CHECK_FALSE(r.t_truth.found());
  CHECK(r.records().find("witness_n=3") != std::string::npos);
  CHECK(r.records().find("verdict=Separated") != std::string::npos);

  const SeparationReport back = distinguish(SParameter::parse("{5}"), SParameter::parse("{3}"));
  CHECK(back.verdict == Verdict::Separated);
  CHECK_FALSE(back.s_truth.found());
  CHECK(back.t_truth.found());

  const SeparationReport same = distinguish(SParameter::parse("{3,7}"), SParameter::parse("{3,7} tail=out bound=9"));
  CHECK(same.verdict == Verdict::IdenticalBelowBound);
  CHECK_FALSE(same.witness_n.has_value());

  // O and O minus {5} first differ at 5.
  const SeparationReport tail = distinguish(SParameter::all_odd(), SParameter::parse("{3} tail=in bound=5"));
  CHECK(tail.witness_n == 5);
  CHECK(tail.verdict == Verdict::Separated);
  CHECK(distinguish(SParameter::all_odd(), SParameter::parse("{3} tail=in bound=5"), 41, 64, 4).records() == tail.records());
}

#include <doctest.h>

#include <random>

#include "tw/audit.hpp"
#include "tw/error.hpp"

using namespace tw;

namespace {

const Allowlist& shipped() {
  static const Allowlist a = Allowlist::load(TW_ALLOWLIST);
  return a;
}

}  // namespace

TEST_CASE("allowlist parsing") {
  const Allowlist a = Allowlist::parse("# comment\nlemma=fg claim=fg.15.printed\n\n  lemma=sent   claim=sent.cap.se # trailing\n");
  CHECK(a.size() == 2);
  CHECK(a.covers("fg", "fg.15.printed"));
  CHECK(a.covers("sent", "sent.cap.se"));
  CHECK_FALSE(a.covers("fg", "fg.15"));
  CHECK_THROWS_AS(Allowlist::parse("lemma=fg\n"), ParseError);
  CHECK_THROWS_AS(Allowlist::load("/nonexistent/allowlist"), Error);
}

TEST_CASE("every audit is clean apart from allowlisted printed deviations") {
  for (const auto& param : default_family()) {
    const SParamPtr s = make_sparam(param);
    for (const auto& name : audit_names()) {
      CAPTURE(name);
      CAPTURE(param.to_string());
      const AuditReport r = run_audit(name, s);
      CHECK(r.count(AuditStatus::Confirmed) > 0);
      CHECK(unexpected_counterexamples(r, shipped()) == 0);
    }
  }
}

TEST_CASE("an empty allowlist exposes the printed clause 15") {
  const AuditReport r = audit_fg(make_sparam(SParameter::empty()));
  CHECK(unexpected_counterexamples(r, Allowlist::parse("")) == r.count(AuditStatus::Counterexample));
  CHECK(r.count(AuditStatus::Counterexample) > 0);
  for (const auto& e : r.entries)
    if (e.status == AuditStatus::Counterexample) CHECK(e.claim == "fg.15.printed");
}

TEST_CASE("reports do not depend on the number of workers") {
  const SParamPtr s = make_sparam(SParameter::parse("{3,7}"));
  for (const auto& name : audit_names()) {
    AuditOptions one, many;
    many.jobs = 4;
    CHECK(run_audit(name, s, one).records() == run_audit(name, s, many).records());
    CHECK(run_audit(name, s, one).text() == run_audit(name, s, many).text());
  }
}

TEST_CASE("counterexamples recompute from their witness") {
  const SParamPtr s = make_sparam(SParameter::parse("{3}"));
  for (const char* name : {"fg", "desc", "steps", "bgen", "sent"}) {
    const AuditReport r = run_audit(name, s);
    for (const auto& e : r.entries) {
      if (e.status != AuditStatus::Counterexample) continue;
      REQUIRE(e.recheck);
      CHECK(e.recheck() == e.actual);
      CHECK(e.expected != e.actual);
      CHECK(e.witness.find(' ') == std::string::npos);
    }
  }
}

TEST_CASE("records carry lemma, claim, status and witness") {
  const AuditReport r = audit_steps(make_sparam(SParameter::empty()));
  const std::string rec = r.records();
  CHECK(rec.find("lemma=steps claim=steps.sigma status=Confirmed witness=p=-2") != std::string::npos);
  CHECK(rec.find("claim=steps.nu4-proof-line status=Counterexample") != std::string::npos);
  // The statement reading nu_n(sigma(x)) fails; the proof's reading holds.
  for (const auto& e : r.entries) {
    if (e.claim == "steps.nu") CHECK(e.status == AuditStatus::Confirmed);
    if (e.claim == "steps.nu-sigma") CHECK(e.status == AuditStatus::Counterexample);
  }
}

TEST_CASE("random elements are reproducible") {
  const SParamPtr s = make_sparam(SParameter::parse("{3}"));
  std::mt19937_64 a(0xB5), b(0xB5);
  for (int i = 0; i < 50; ++i) CHECK(random_element(s, a) == random_element(s, b));
}

TEST_CASE("unknown audit") { CHECK_THROWS_AS(run_audit("nope", make_sparam(SParameter::empty())), UsageError); }

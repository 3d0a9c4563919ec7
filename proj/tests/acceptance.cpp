// Acceptance run: one PASS/FAIL line per criterion, with time limits where
// they apply. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tw/audit.hpp"
#include "tw/oracle.hpp"
#include "tw/relalg.hpp"
#include "tw/search.hpp"
#include "tw/separation.hpp"
#include "tw/symbolic.hpp"
#include "tw/terms.hpp"

using namespace tw;

namespace {

std::vector<SParamPtr> family() {
  std::vector<SParamPtr> out;
  for (auto& s : default_family()) out.push_back(make_sparam(s));
  return out;
}

const Allowlist& allowlist() {
  static const Allowlist a = Allowlist::load(TW_ALLOWLIST);
  return a;
}

struct Tally {
  std::size_t confirmed = 0;
  std::size_t counterexamples = 0;
};

Tally tally(const AuditReport& r, const std::string& claim) {
  Tally t;
  for (const auto& e : r.entries) {
    if (e.claim != claim) continue;
    t.confirmed += e.status == AuditStatus::Confirmed;
    t.counterexamples += e.status == AuditStatus::Counterexample;
  }
  return t;
}

std::vector<BasisSet> generators(int p_abs, int m_max) {
  std::vector<BasisSet> out;
  for (int p = -p_abs; p <= p_abs; ++p) {
    out.push_back({BasisKind::D, p, 1});
    out.push_back({BasisKind::U, p, 1});
    for (int m = 1; m <= m_max; ++m) {
      out.push_back({BasisKind::A, p, m});
      out.push_back({BasisKind::Srow, p, m});
      out.push_back({BasisKind::SbarRow, p, m});
    }
  }
  return out;
}

// 1. f and g three ways: frame clauses, the operator table, the truncation.
bool dual_path(std::string& note) {
  std::size_t checked = 0;
  for (const auto& s : family()) {
    const TruncationOracle oracle(s, TruncationSpec{-8, 8, 48});
    for (const auto& b : generators(3, 12)) {
      const SymbolicSet x = SymbolicSet::basis(s, b);
      const SymbolicSet f = apply_f(x), g = apply_g(x);
      if (f != apply_f_table(x) || g != apply_g_table(x)) {
        note = "table disagrees at " + to_string(b) + " for " + s->to_string();
        return false;
      }
      const IndexSet e = oracle.embed(x);
      if (!oracle.agrees(f, oracle.f(e), 1) || !oracle.agrees(g, oracle.g(e), 1)) {
        note = "truncation disagrees at " + to_string(b) + " for " + s->to_string();
        return false;
      }
      checked += 2;
    }
  }
  note = std::to_string(checked) + " operator values";
  return true;
}

// 2. The f/g clause audit.
bool fg_audit(std::string& note) {
  std::size_t confirmed = 0, printed = 0;
  for (const auto& s : family()) {
    const AuditReport r = audit_fg(s);
    if (unexpected_counterexamples(r, allowlist()) != 0) {
      note = "unexpected counterexample for " + s->to_string();
      return false;
    }
    confirmed += r.count(AuditStatus::Confirmed);
    printed += r.count(AuditStatus::Counterexample);
  }
  note = std::to_string(confirmed) + " confirmed, " + std::to_string(printed) + " allowlisted printed-form differences";
  return true;
}

// 3. Boolean and operator laws on random elements.
bool law_suite(std::string& note) {
  std::mt19937_64 rng(0xB5);
  for (const auto& s : family()) {
    const SymbolicSet V = SymbolicSet::full(s);
    for (int i = 0; i < 1000; ++i) {
      const SymbolicSet x = random_element(s, rng), y = random_element(s, rng);
      const bool ok = x.unite(y).complement() == x.complement().intersect(y.complement()) &&
                      x.intersect(y).complement() == x.complement().unite(y.complement()) &&
                      x.complement().complement() == x &&
                      apply_f(x).intersect(y).is_empty() == x.intersect(apply_g(y)).is_empty() &&
                      (x.is_empty() || apply_f(x).unite(apply_g(x)) == V) &&
                      apply_f(x.shift(3)) == apply_f(x).shift(3) && apply_g(x.shift(-2)) == apply_g(x).shift(-2);
      if (!ok) {
        note = "law fails at X=" + x.to_string() + " Y=" + y.to_string() + " for " + s->to_string();
        return false;
      }
    }
  }
  note = "5000 pairs";
  return true;
}

// 4-6. Audits whose named claims must all be confirmed.
bool claims_hold(const std::string& audit, const std::vector<std::string>& claims, std::size_t min_per_s,
                 std::string& note) {
  std::size_t total = 0;
  for (const auto& s : family()) {
    const AuditReport r = run_audit(audit, s);
    if (unexpected_counterexamples(r, allowlist()) != 0) {
      note = "unexpected counterexample for " + s->to_string();
      return false;
    }
    std::size_t here = 0;
    for (const auto& c : claims) {
      const Tally t = tally(r, c);
      if (t.counterexamples != 0) {
        note = c + " fails for " + s->to_string();
        return false;
      }
      here += t.confirmed;
    }
    if (here < min_per_s) {
      note = "only " + std::to_string(here) + " instances for " + s->to_string();
      return false;
    }
    total += here;
  }
  note = std::to_string(total) + " instances";
  return true;
}

// 7. Every ordered pair of distinct parameters is separated by some n <= 9.
bool separation(std::string& note) {
  const auto fam = default_family();
  std::size_t pairs = 0;
  for (const auto& s : fam)
    for (const auto& t : fam) {
      if (s == t) continue;
      const SeparationReport r = distinguish(s, t, 41, 64, 4);
      if (r.verdict != Verdict::Separated || !r.witness_n || *r.witness_n > 9) {
        note = s.to_string() + " vs " + t.to_string() + ": " + to_string(r.verdict);
        return false;
      }
      const int n = *r.witness_n;
      if (r.s_truth.found() != s.in_se(n) || r.t_truth.found() != t.in_se(n)) {
        note = "witness side mismatch for " + s.to_string() + " vs " + t.to_string();
        return false;
      }
      ++pairs;
    }
  note = std::to_string(pairs) + " ordered pairs";
  return true;
}

// 8. Sentence audit: stable output, phi at the index-1 atoms, tau over atoms.
bool sentences(std::string& note) {
  for (const auto& s : family()) {
    const AuditReport a = audit_sent(s, {0xB5, 1, 200});
    const AuditReport b = audit_sent(s, {0xB5, 1, 200});
    const AuditReport c = audit_sent(s, {0xB5, 4, 200});
    if (a.records() != b.records() || a.records() != c.records() || a.text() != c.text()) {
      note = "report differs between runs for " + s->to_string();
      return false;
    }
    const Tally phi = tally(a, "sent.phi-if");
    if (phi.counterexamples != 0 || phi.confirmed == 0) {
      note = "phi(A_{p,1}) fails for " + s->to_string();
      return false;
    }
    for (int p = -1; p <= 1; ++p)
      for (int n = 3; n <= 24; ++n)
        if (eval_tau(s, n, SymbolicSet::basis(s, {BasisKind::A, p, 1})) != s->in_se(n)) {
          note = "tau_" + std::to_string(n) + " at A(" + std::to_string(p) + ",1) for " + s->to_string();
          return false;
        }
    if (tally(a, "sent.exists-tau").counterexamples != 0) {
      note = "exists-tau fails for " + s->to_string();
      return false;
    }
  }
  note = "3 runs per parameter, jobs 1 and 4";
  return true;
}

// 9. Small relation algebras.
bool relation_algebras(std::string& note) {
  const AtomStructure expected[] = {structure_a1(), structure_a2(), structure_a3()};
  for (int n = 1; n <= 3; ++n)
    if (!isomorphic(minimal_subalgebra(expand(proper_structure(n))).structure(), expected[n - 1])) {
      note = "minimal subalgebra of the proper algebra on " + std::to_string(n) + " points";
      return false;
    }
  const AxiomReport a3 = check_axioms(expand(structure_a3()));
  if (!(a3.triangle() && a3.associative && a3.symmetric && a3.reflexive)) {
    note = "A3 axioms";
    return false;
  }
  const AxiomReport a2 = check_axioms(expand(structure_a2()));
  if (!a2.semiassociative || a2.reflexive) {
    note = "A2 axioms";
    return false;
  }
  std::size_t checked = 0;
  for (int k = 1; k <= 3; ++k)
    for (const auto& base : enumerate_atom_structures(k, false)) {
      // Each search result plus every single-cycle deletion, so both outcomes occur.
      std::vector<AtomStructure> variants{base};
      for (const auto& c : base.cycles) {
        AtomStructure v = base;
        v.cycles.erase(c);
        variants.push_back(v);
      }
      for (const auto& v : variants) {
        const FiniteRelAlgebra a = expand(v);
        if (triangle_laws_atoms(a) != triangle_laws_elements(a)) {
          note = "triangle-law levels disagree on\n" + v.to_string();
          return false;
        }
        ++checked;
      }
    }
  note = std::to_string(checked) + " structures with k <= 3";
  return true;
}

// 10. Small total frames.
bool frame_search(std::string& note) {
  const auto one = enumerate_total_frames(1);
  if (one.size() != 1 || !(as_finite_algebra(one[0]) == t0_algebra())) {
    note = "k=1 is not T0";
    return false;
  }
  if (enumerate_total_frames(2).size() != 2) {
    note = "k=2 class count";
    return false;
  }
  for (int k = 1; k <= 5; ++k)
    if (search_frames(k, 1).text() != search_frames(k, 8).text()) {
      note = "serial and parallel reports differ at k=" + std::to_string(k);
      return false;
    }
  if (search_structures(3, {}, 1).text() != search_structures(3, {}, 8).text()) {
    note = "serial and parallel structure reports differ";
    return false;
  }
  for (int k = 1; k <= 3; ++k)
    for (const auto& f : enumerate_total_frames(k))
      if (!check_discriminator(as_finite_algebra(f))) {
        note = "no discriminator on a frame with k=" + std::to_string(k);
        return false;
      }
  note = "k <= 5";
  return true;
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;  // 0 means no limit
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "f and g agree across clauses, table and truncation", 10, dual_path},
      {2, "fg clause audit", 10, fg_audit},
      {3, "algebraic law suite", 30, law_suite},
      {4, "4or5 on 200 sets with a maximal level",
       0, [](std::string& n) { return claims_hold("4or5", {"4or5.1", "4or5.2"}, 200, n); }},
      {5, "sigma and nu_n at A_{p,1}", 0,
       [](std::string& n) { return claims_hold("steps", {"steps.sigma", "steps.nu"}, 5 + 5 * 22, n); }},
      {6, "basis replay from V_0", 0,
       [](std::string& n) {
         return claims_hold("bgen",
                            {"bgen.f2m", "bgen.Vup", "bgen.g2m", "bgen.Vdown", "bgen.D", "bgen.U", "bgen.A1", "bgen.A",
                             "bgen.S", "bgen.Sbar"},
                            1, n);
       }},
      {7, "separation of every ordered pair", 60, separation},
      {8, "sentence audit determinism and truth", 0, sentences},
      {9, "relation algebras A1, A2, A3 and triangle laws", 20, relation_algebras},
      {10, "total frame search", 0, frame_search},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_seconds > 0 && secs > c.limit_seconds) {
      ok = false;
      note += ", over the time limit";
    }
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs << "s";
    if (c.limit_seconds > 0) t << " of " << c.limit_seconds << "s";
    std::printf("%s %d %s: %s (%s)\n", ok ? "PASS" : "FAIL", c.number, c.name.c_str(), note.c_str(), t.str().c_str());
    failures += !ok;
  }
  return failures == 0 ? 0 : 1;
}

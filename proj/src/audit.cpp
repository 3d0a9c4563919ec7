#include "tw/audit.hpp"

#include <array>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "tw/error.hpp"
#include "tw/formula.hpp"
#include "tw/oracle.hpp"
#include "tw/parallel.hpp"
#include "tw/separation.hpp"
#include "tw/terms.hpp"

namespace tw {

std::string to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Confirmed: return "Confirmed";
    case AuditStatus::Counterexample: return "Counterexample";
    case AuditStatus::Skipped: return "Skipped";
  }
  return "?";
}

namespace {

std::string compact(std::string text) {
  std::string out;
  for (char c : text)
    if (c != ' ') out += c;
  return out;
}

std::string str(const SymbolicSet& x) { return x.to_string(); }

}  // namespace

std::size_t AuditReport::count(AuditStatus s) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.status == s;
  return n;
}

std::string AuditReport::text() const {
  std::ostringstream os;
  os << "audit " << lemma << "\n";
  os << "S = " << sparam << "\n";
  os << "grid: " << grid << "\n";
  // Claims in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::array<std::size_t, 3>> tally;
  std::map<std::string, std::string> statement;
  for (const auto& e : entries) {
    if (!tally.count(e.claim)) {
      order.push_back(e.claim);
      tally[e.claim] = {0, 0, 0};
      statement[e.claim] = e.statement;
    }
    ++tally[e.claim][static_cast<std::size_t>(e.status)];
  }
  for (const auto& c : order) {
    const auto& t = tally[c];
    os << "  " << c << "  " << statement[c] << "\n";
    os << "      confirmed=" << t[0] << " counterexample=" << t[1] << " skipped=" << t[2] << "\n";
  }
  for (const auto& e : entries) {
    if (e.status == AuditStatus::Counterexample) {
      os << "  counterexample " << e.claim << " at " << e.witness << "\n";
      os << "      expected: " << e.expected << "\n";
      os << "      actual:   " << e.actual << "\n";
    } else if (e.status == AuditStatus::Skipped) {
      os << "  skipped " << e.claim << " at " << e.witness << ": " << e.reason << "\n";
    }
  }
  os << "totals: confirmed=" << count(AuditStatus::Confirmed)
     << " counterexample=" << count(AuditStatus::Counterexample) << " skipped=" << count(AuditStatus::Skipped)
     << "\n";
  return os.str();
}

std::string AuditReport::records() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "lemma=" << lemma << " claim=" << e.claim << " status=" << to_string(e.status) << " witness=" << e.witness;
    if (e.status == AuditStatus::Counterexample)
      os << " expected=" << compact(e.expected) << " actual=" << compact(e.actual);
    if (e.status == AuditStatus::Skipped) os << " reason=" << compact(e.reason);
    os << "\n";
  }
  return os.str();
}

Allowlist Allowlist::parse(std::string_view text) {
  Allowlist out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word, lemma, claim;
    while (words >> word) {
      if (word.rfind("lemma=", 0) == 0) lemma = word.substr(6);
      else if (word.rfind("claim=", 0) == 0) claim = word.substr(6);
      else throw ParseError("allowlist line " + std::to_string(lineno) + ": unexpected '" + word + "'");
    }
    if (lemma.empty() && claim.empty()) continue;
    if (lemma.empty() || claim.empty())
      throw ParseError("allowlist line " + std::to_string(lineno) + ": need both lemma= and claim=");
    out.items_.insert({lemma, claim});
  }
  return out;
}

Allowlist Allowlist::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read allowlist " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::size_t unexpected_counterexamples(const AuditReport& r, const Allowlist& allow) {
  std::size_t n = 0;
  for (const auto& e : r.entries)
    n += e.status == AuditStatus::Counterexample && !allow.covers(r.lemma, e.claim);
  return n;
}

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

SymbolicSet random_element(const SParamPtr& s, std::mt19937_64& rng) {
  static const BasisKind kinds[] = {BasisKind::A, BasisKind::A, BasisKind::Srow, BasisKind::SbarRow, BasisKind::D,
                                    BasisKind::U};
  SymbolicSet out = SymbolicSet::empty(s);
  const int parts = pick(rng, 1, 6);
  for (int i = 0; i < parts; ++i) {
    const BasisKind k = kinds[pick(rng, 0, 5)];
    const int p = pick(rng, -3, 3);
    const int m = pick(rng, 1, 12);
    out = out.unite(SymbolicSet::basis(s, {k, p, m}));
  }
  return out;
}

std::vector<SParameter> default_family() {
  return {SParameter::empty(), SParameter({3}, 3, Tail::AllOut), SParameter({3, 7}, 7, Tail::AllOut),
          SParameter::all_odd(), SParameter({3}, 5, Tail::AllIn)};
}

namespace {

using Probe = std::function<AuditEntry()>;

struct Ctx {
  SParamPtr s;

  SymbolicSet A(int p, int m) const { return SymbolicSet::basis(s, {BasisKind::A, p, m}); }
  SymbolicSet S(int p, int m) const { return SymbolicSet::basis(s, {BasisKind::Srow, p, m}); }
  SymbolicSet Sbar(int p, int m) const { return SymbolicSet::basis(s, {BasisKind::SbarRow, p, m}); }
  SymbolicSet D(int p) const { return SymbolicSet::basis(s, {BasisKind::D, p, 1}); }
  SymbolicSet U(int p) const { return SymbolicSet::basis(s, {BasisKind::U, p, 1}); }
  SymbolicSet V(int p) const { return level_set(s, p); }
  SymbolicSet all() const { return SymbolicSet::full(s); }
  SymbolicSet none() const { return SymbolicSet::empty(s); }
  SymbolicSet initial(int p, int k) const {  // A_{p,1} + ... + A_{p,k}
    SymbolicSet out = none();
    for (int n = 1; n <= k; ++n) out = out.unite(A(p, n));
    return out;
  }
  SymbolicSet f(const SymbolicSet& x, int k = 1) const {
    SymbolicSet out = x;
    for (int i = 0; i < k; ++i) out = apply_f(out);
    return out;
  }
  SymbolicSet g(const SymbolicSet& x, int k = 1) const {
    SymbolicSet out = x;
    for (int i = 0; i < k; ++i) out = apply_g(out);
    return out;
  }
};

AuditEntry confirmed(std::string claim, std::string statement, std::string witness) {
  AuditEntry e;
  e.claim = std::move(claim);
  e.statement = std::move(statement);
  e.witness = compact(std::move(witness));
  return e;
}

// Equality claim: expected is fixed, actual is recomputable from the witness.
Probe equality(std::string claim, std::string statement, std::string witness, SymbolicSet expected,
               std::function<SymbolicSet()> actual) {
  return [=]() {
    AuditEntry e = confirmed(claim, statement, witness);
    const SymbolicSet got = actual();
    e.recheck = [actual] { return actual().to_string(); };
    if (!got.is_equal(expected)) {
      e.status = AuditStatus::Counterexample;
      e.expected = str(expected);
      e.actual = str(got);
    }
    return e;
  };
}

Probe truth(std::string claim, std::string statement, std::string witness, bool expected,
            std::function<bool()> actual) {
  return [=]() {
    AuditEntry e = confirmed(claim, statement, witness);
    e.recheck = [actual] { return std::string(actual() ? "true" : "false"); };
    if (actual() != expected) {
      e.status = AuditStatus::Counterexample;
      e.expected = expected ? "true" : "false";
      e.actual = expected ? "false" : "true";
    }
    return e;
  };
}

Probe skipped(std::string claim, std::string statement, std::string witness, std::string reason) {
  return [=]() {
    AuditEntry e = confirmed(claim, statement, witness);
    e.status = AuditStatus::Skipped;
    e.reason = reason;
    return e;
  };
}

// Symbolic value vs the truncation on the window shrunk by `depth`.
Probe oracle_match(std::string claim, std::string statement, std::string witness,
                   std::shared_ptr<const TruncationOracle> oracle, int depth,
                   std::function<SymbolicSet()> symbolic, std::function<IndexSet()> finite) {
  return [=]() {
    AuditEntry e = confirmed(claim, statement, witness);
    auto check = [=]() -> std::string {
      const auto v = oracle->disagreement(symbolic(), finite(), depth);
      return v ? "differs at " + to_string(*v) : "agrees";
    };
    e.recheck = check;
    const std::string got = check();
    if (got != "agrees") {
      e.status = AuditStatus::Counterexample;
      e.expected = "agrees";
      e.actual = got;
    }
    return e;
  };
}

AuditReport run(std::string lemma, const SParamPtr& s, std::string grid, const std::vector<Probe>& probes,
                unsigned jobs) {
  AuditReport r;
  r.lemma = std::move(lemma);
  r.sparam = s->to_string();
  r.grid = std::move(grid);
  r.entries = parallel_map<AuditEntry>(probes.size(), jobs, [&](std::size_t i) { return probes[i](); });
  return r;
}

std::string pm(int p, int m) { return "p=" + std::to_string(p) + ",m=" + std::to_string(m); }
std::string pn(int p, int n) { return "p=" + std::to_string(p) + ",n=" + std::to_string(n); }

std::vector<BasisSet> generator_grid(int pmax, int mmax) {
  std::vector<BasisSet> out;
  for (int p = -pmax; p <= pmax; ++p) {
    out.push_back({BasisKind::D, p, 1});
    out.push_back({BasisKind::U, p, 1});
    for (int m = 1; m <= mmax; ++m) {
      out.push_back({BasisKind::A, p, m});
      out.push_back({BasisKind::Srow, p, m});
      out.push_back({BasisKind::SbarRow, p, m});
    }
  }
  return out;
}

const char* clause_statement(Operator op, int n) {
  static const char* f_text[] = {"",
                                 "f(A_{p,1}) = A_{p,1} + A_{p,2} + D_{p-1} + S_{p+1,1}",
                                 "f(A_{p,m}) = A_{p,1..m+1} + D_{p-1} for m > 1",
                                 "f(D_p) = D_p + S_{p+1,1}",
                                 "f(U_p) = V",
                                 "f(S_{p,m}) = D_p",
                                 "f(Sbar_{p,m}) = 0 if T empty",
                                 "f(Sbar_{p,m}) = A_{p,1..max T+1} + D_{p-1} if T finite nonempty",
                                 "f(Sbar_{p,m}) = D_p if T infinite"};
  static const char* g_text[] = {"g(A_{p,1}) = U_p",
                                 "g(A_{p,2}) = A_{p-1,1} + U_p",
                                 "g(A_{p,m}) = U_{p+1} + S_{p,m-1} + Sbar_{p,m-1} for m > 1 outside S_E",
                                 "g(A_{p,m}) = A_{p-1,1} + U_{p+1} + S_{p,m-1} + Sbar_{p,m-1} for m > 2 in S_E",
                                 "g(D_p) = V",
                                 "g(U_p) = A_{p-1,1} + U_p",
                                 "g(S_{p,m}) = A_{p-1,1} + U_{p+1} + {a_{p,k} : k >= min(S_E from m) - 1}",
                                 "g(Sbar_{p,m}) = 0 if T empty",
                                 "g(Sbar_{p,m}) = S_{p,min T-1} + Sbar_{p,min T-1} + U_{p+1} if T nonempty"};
  return op == Operator::F ? f_text[n] : g_text[n - 9];
}

}  // namespace

// ---------------------------------------------------------------------------

AuditReport audit_fg(const SParamPtr& s, const AuditOptions& opt) {
  auto oracle = std::make_shared<const TruncationOracle>(s, TruncationSpec{});
  std::vector<Probe> probes;
  for (Operator op : {Operator::F, Operator::G}) {
    for (const BasisSet& b : generator_grid(3, 12)) {
      const TableClause c = table_clause(s, op, b);
      const std::string claim = "fg." + std::to_string(c.number);
      const std::string witness = std::string(op == Operator::F ? "f:" : "g:") + to_string(b);
      const SymbolicSet x = SymbolicSet::basis(s, b);
      auto rule = [x, op] { return op == Operator::F ? apply_f(x) : apply_g(x); };
      probes.push_back(equality(claim, clause_statement(op, c.number), witness, c.rhs, rule));
      probes.push_back(oracle_match(claim + ".oracle", "truncation agrees with the symbolic value", witness, oracle, 1,
                                    rule, [oracle, x, op] {
                                      const IndexSet e = oracle->embed(x);
                                      return op == Operator::F ? oracle->f(e) : oracle->g(e);
                                    }));
      if (c.printed)
        probes.push_back(equality(claim + ".printed", "g(S_{p,m}) = A_{p-1,1} + U_p (printed form)", witness,
                                  *c.printed, rule));
    }
  }
  return run("fg", s, "p in [-3,3], m <= 12, window p in [-8,8], m <= 48", probes, opt.jobs);
}

AuditReport audit_desc(const SParamPtr& s, const AuditOptions& opt) {
  const Ctx C{s};
  std::vector<Probe> probes;
  const int P = 2, M = 6;
  for (int p = -P; p <= P; ++p) {
    for (int q = -P; q <= P; ++q) {
      const std::string w = "p=" + std::to_string(p) + ",q=" + std::to_string(q);
      probes.push_back(equality("desc.UcapU", "U_p & U_q = U_max(p,q)", w, C.U(std::max(p, q)),
                                [=] { return C.U(p).intersect(C.U(q)); }));
      SymbolicSet band = C.none();
      for (int r = p; r <= q; ++r) band = band.unite(C.V(r));
      probes.push_back(equality("desc.UcapD", "U_p & D_q = union of V_r, p <= r <= q", w, band,
                                [=] { return C.U(p).intersect(C.D(q)); }));
      probes.push_back(equality("desc.DcapD", "D_p & D_q = D_min(p,q)", w, C.D(std::min(p, q)),
                                [=] { return C.D(p).intersect(C.D(q)); }));
      for (int m = 1; m <= M; ++m) {
        for (int n = 1; n <= M; ++n) {
          const std::string wmn = w + ",m=" + std::to_string(m) + ",n=" + std::to_string(n);
          const int hi = std::max(m, n);
          probes.push_back(equality("desc.ScapS", "S_{p,m} & S_{q,n} = S_{p,max(m,n)} if p = q, else 0", wmn,
                                    p == q ? C.S(p, hi) : C.none(),
                                    [=] { return C.S(p, m).intersect(C.S(q, n)); }));
          probes.push_back(equality("desc.ScapSbar", "S_{p,m} & Sbar_{q,n} = 0", wmn, C.none(),
                                    [=] { return C.S(p, m).intersect(C.Sbar(q, n)); }));
          probes.push_back(equality("desc.SbarcapSbar", "Sbar_{p,m} & Sbar_{q,n} = Sbar_{p,max(m,n)} if p = q, else 0",
                                    wmn, p == q ? C.Sbar(p, hi) : C.none(),
                                    [=] { return C.Sbar(p, m).intersect(C.Sbar(q, n)); }));
          if (p == q)
            probes.push_back(equality("desc.SbarcapSbar.printed", "Sbar_{p,m} & Sbar_{p,n} = S_{p,max(m,n)} (printed)",
                                      wmn, C.S(p, hi), [=] { return C.Sbar(p, m).intersect(C.Sbar(q, n)); }));
        }
        const std::string wm = w + ",m=" + std::to_string(m);
        for (auto [name, X] : {std::pair{"S", C.S(q, m)}, std::pair{"Sbar", C.Sbar(q, m)}}) {
          const SymbolicSet Xc = X;
          probes.push_back(equality(std::string("desc.UcapX"), "U_p & X = X if q >= p, else 0 (X = S_{q,m}, Sbar_{q,m})",
                                    wm + ",X=" + name, q >= p ? Xc : C.none(), [=] { return C.U(p).intersect(Xc); }));
          probes.push_back(equality(std::string("desc.DcapX"), "D_p & X = X if q <= p, else 0 (X = S_{q,m}, Sbar_{q,m})",
                                    wm + ",X=" + name, q <= p ? Xc : C.none(), [=] { return C.D(p).intersect(Xc); }));
        }
      }
    }
    for (int m = 1; m <= M; ++m) {
      const std::string w = pm(p, m);
      const SymbolicSet rest = C.initial(p, m - 1).unite(C.U(p + 1)).unite(C.D(p - 1));
      probes.push_back(equality("desc.Acomp", "A_{p,m}' = A_{p,1..m-1} + U_{p+1} + D_{p-1} + S_{p,m+1} + Sbar_{p,m+1}",
                                w, rest.unite(C.S(p, m + 1)).unite(C.Sbar(p, m + 1)),
                                [=] { return C.A(p, m).complement(); }));
      // Neither row contains a_{p,1}, so at m = 1 the complement needs A_{p,1}.
      const SymbolicSet row_rest = rest.unite(C.A(p, 1));
      probes.push_back(equality("desc.Scomp", "S_{p,m}' = A_{p,1..max(m-1,1)} + Sbar_{p,m} + U_{p+1} + D_{p-1}", w,
                                row_rest.unite(C.Sbar(p, m)), [=] { return C.S(p, m).complement(); }));
      probes.push_back(equality("desc.Sbarcomp", "Sbar_{p,m}' = A_{p,1..max(m-1,1)} + S_{p,m} + U_{p+1} + D_{p-1}", w,
                                row_rest.unite(C.S(p, m)), [=] { return C.Sbar(p, m).complement(); }));
      if (m == 1) {
        probes.push_back(equality("desc.Scomp.printed", "S_{p,m}' = A_{p,1..m-1} + Sbar_{p,m} + U_{p+1} + D_{p-1}", w,
                                  rest.unite(C.Sbar(p, m)), [=] { return C.S(p, m).complement(); }));
        probes.push_back(equality("desc.Sbarcomp.printed", "Sbar_{p,m}' = A_{p,1..m-1} + S_{p,m} + U_{p+1} + D_{p-1}",
                                  w, rest.unite(C.S(p, m)), [=] { return C.Sbar(p, m).complement(); }));
      }
      for (auto [name, X] : {std::pair{"S", C.S(p, m)}, std::pair{"Sbar", C.Sbar(p, m)}, std::pair{"U", C.U(p)},
                             std::pair{"D", C.D(p)}}) {
        const SymbolicSet a = C.A(p, m);
        const SymbolicSet Xc = X;
        probes.push_back(truth("desc.AcapX", "A_{p,m} & X is 0 or A_{p,m}", w + ",X=" + name, true, [=] {
          const SymbolicSet meet = a.intersect(Xc);
          return meet.is_empty() || meet.is_equal(a);
        }));
      }
    }
    const std::string w = "p=" + std::to_string(p);
    probes.push_back(equality("desc.Ucomp", "U_p' = D_{p-1}", w, C.D(p - 1), [=] { return C.U(p).complement(); }));
    probes.push_back(equality("desc.Dcomp", "D_p' = U_{p+1}", w, C.U(p + 1), [=] { return C.D(p).complement(); }));
  }

  std::mt19937_64 rng(opt.seed);
  auto oracle = std::make_shared<const TruncationOracle>(s, TruncationSpec{});
  for (int i = 0; i < opt.samples; ++i) {
    const SymbolicSet x = random_element(s, rng);
    const SymbolicSet y = random_element(s, rng);
    const std::string w = "sample=" + std::to_string(i);
    probes.push_back(truth("desc.closure", "results of all operations are canonical finite unions of generators", w,
                           true, [=] {
                             for (const SymbolicSet& r : {x.unite(y), x.intersect(y), x.complement(), apply_f(x),
                                                          apply_g(x)}) {
                               try {
                                 r.validate();
                               } catch (const std::logic_error&) {
                                 return false;
                               }
                               SymbolicSet back = SymbolicSet::empty(s);
                               for (const auto& b : decompose_to_basis(r)) back = back.unite(SymbolicSet::basis(s, b));
                               if (!back.is_equal(r)) return false;
                             }
                             return true;
                           }));
    probes.push_back(oracle_match("desc.closure.oracle", "x & y, x' and f(x) agree with the truncation", w, oracle, 1,
                                  [=] { return x.intersect(y).unite(apply_f(x).minus(y)); },
                                  [=] {
                                    const IndexSet ex = oracle->embed(x), ey = oracle->embed(y);
                                    return (ex & ey) | (oracle->f(ex) - ey);
                                  }));
  }
  return run("desc", s,
             "p,q in [-2,2], m,n <= 6; " + std::to_string(opt.samples) + " random pairs, seed " +
                 std::to_string(opt.seed),
             probes, opt.jobs);
}

AuditReport audit_4or5(const SParamPtr& s, const AuditOptions& opt) {
  const Ctx C{s};
  auto oracle = std::make_shared<const TruncationOracle>(s, TruncationSpec{});
  std::vector<Probe> probes;
  auto add = [&](const SymbolicSet& x, const std::string& w) {
    const LevelExtent top = x.max_level();
    if (top.kind != LevelExtent::Kind::Level) {
      probes.push_back(skipped("4or5", "f^4(X) & f^2(X)' = V_{q+2} (a_{q,1} in X), else f^5(X) & f^3(X)' = V_{q+2}", w,
                               top.kind == LevelExtent::Kind::Unbounded ? "no maximal level" : "X is empty"));
      return;
    }
    const int q = top.level;
    const bool case1 = x.member({q, 1});
    const int hi = case1 ? 4 : 5, lo = case1 ? 2 : 3;
    const std::string claim = case1 ? "4or5.1" : "4or5.2";
    const std::string text = case1 ? "f^4(X) & f^2(X)' = V_{q+2} when a_{q,1} in X"
                                   : "f^5(X) & f^3(X)' = V_{q+2} when a_{q,1} not in X";
    auto value = [=] { return C.f(x, hi).minus(C.f(x, lo)); };
    probes.push_back(equality(claim, text, w, C.V(q + 2), value));
    probes.push_back(oracle_match(claim + ".oracle", "truncation agrees", w, oracle, hi, value, [=] {
      IndexSet a = oracle->embed(x);
      IndexSet b = a;
      for (int i = 0; i < hi; ++i) a = oracle->f(a);
      for (int i = 0; i < lo; ++i) b = oracle->f(b);
      return a - b;
    }));
  };
  add(C.V(0), "X=V(0)");
  add(C.A(0, 2), "X=A(0,2)");
  add(C.U(0), "X=U(0)");
  // Only sets with a maximal level are in scope; draw until enough of them.
  std::mt19937_64 rng(opt.seed);
  int kept = 0, draws = 0;
  while (kept < opt.samples && draws < 50 * opt.samples + 50) {
    const SymbolicSet x = random_element(s, rng);
    ++draws;
    if (x.max_level().kind != LevelExtent::Kind::Level) continue;
    add(x, "sample=" + std::to_string(kept++) + ",X=" + x.to_string());
  }
  return run("4or5", s,
             std::to_string(kept) + " random X with a maximal level (" + std::to_string(draws) + " draws), seed " +
                 std::to_string(opt.seed),
             probes, opt.jobs);
}

AuditReport audit_steps(const SParamPtr& s, const AuditOptions& opt) {
  const Ctx C{s};
  const SymbolicCarrier carrier(s);
  std::vector<Probe> probes;
  const Term sigma = sigma_term();
  auto at = [carrier](const Term& t, const SymbolicSet& x) { return eval_term(t, carrier, {x}); };
  for (int p = -2; p <= 2; ++p) {
    const SymbolicSet a1 = C.A(p, 1);
    probes.push_back(equality("steps.sigma", "sigma(A_{p,1}) = A_{p,2}", "p=" + std::to_string(p), C.A(p, 2),
                              [=] { return at(sigma, a1); }));
    for (int n = 3; n <= 24; ++n) {
      const Term nu = nu_term(n);
      probes.push_back(equality("steps.nu", "nu_n(A_{p,1}) = A_{p,n}", pn(p, n), C.A(p, n), [=] { return at(nu, a1); }));
      probes.push_back(equality("steps.nu-sigma", "nu_n(sigma(x)) = A_{p,n} at x = A_{p,1} (statement reading)",
                                pn(p, n), C.A(p, n), [=] { return at(nu, at(sigma, a1)); }));
    }
    probes.push_back(equality("steps.nu4-proof-line", "nu_4(A_{p,1}) = A_{p,3} (printed proof line)",
                              "p=" + std::to_string(p), C.A(p, 3), [=] { return at(nu_term(4), a1); }));
  }
  // Truncation cross-check at p = 0 for the terms that fit the window.
  auto oracle = std::make_shared<const TruncationOracle>(s, term_suite_window());
  const SymbolicSet a01 = C.A(0, 1);
  std::vector<std::pair<std::string, Term>> suite{{"sigma", sigma}};
  for (int n = 3; n <= 12; ++n) suite.push_back({"nu" + std::to_string(n), nu_term(n)});
  for (const auto& [name, t] : suite) {
    probes.push_back(oracle_match("steps.oracle", "truncation agrees on the term value at A_{0,1}", "term=" + name,
                                  oracle, t.depth(), [=] { return at(t, a01); },
                                  [=] { return oracle->eval(t, {a01}); }));
  }
  return run("steps", s, "p in [-2,2], 3 <= n <= 24; oracle at p=0 for depth <= 29", probes, opt.jobs);
}

namespace {

// Everything the generation argument derives from V_0, with no use of the
// symbolic basis constructors.
struct BgenChain {
  std::map<int, SymbolicSet> V, D, U, A1, Vdown_printed;
  std::map<int, SymbolicSet> f2m;                    // f^{2m}(V_0)
  std::map<std::pair<int, int>, SymbolicSet> g2m;    // (q, m) -> g^{2m}(V_q)
  std::map<std::pair<int, int>, SymbolicSet> vdown;  // (q, m) -> derived V_{q-m-1}
  std::map<std::pair<int, int>, SymbolicSet> A, S, Sbar, Sbar_printed;
};

BgenChain derive_bgen(const SParamPtr& s) {
  const Ctx C{s};
  const SymbolicCarrier carrier(s);
  BgenChain c;
  c.V.insert_or_assign(0, C.V(0));
  for (int m = 1; m <= 4; ++m) c.f2m.insert_or_assign(m, C.f(c.V.at(0), 2 * m));
  for (int m = 1; m <= 3; ++m) c.V.insert_or_assign(m + 1, c.f2m.at(m + 1).minus(c.f2m.at(m)));
  auto down = [&](int q, int m) {
    const SymbolicSet lo = C.g(c.V.at(q), 2 * m);
    const SymbolicSet hi = C.g(lo, 2);
    c.g2m.insert_or_assign({q, m}, lo);
    c.vdown.insert_or_assign({q, m}, hi.minus(lo));
    c.Vdown_printed.insert_or_assign(q - m - 1, lo.minus(hi));
    if (!c.V.count(q - m - 1)) c.V.insert_or_assign(q - m - 1, hi.minus(lo));
  };
  down(3, 1);                              // V_1
  for (int m = 1; m <= 5; ++m) down(2, m);  // V_0 .. V_{-4}
  for (int q = -3; q <= 3; ++q) {
    c.D.insert_or_assign(q, C.f(c.V.at(q - 1), 2));
    c.U.insert_or_assign(q, C.g(c.V.at(q + 1), 2));
  }
  for (int q = -2; q <= 2; ++q) {
    c.A1.insert_or_assign(q, C.g(c.U.at(q + 1)).minus(c.U.at(q + 1)));
    c.A.insert_or_assign({q, 1}, c.A1.at(q));
    for (int n = 2; n <= 8; ++n)
      c.A.insert_or_assign({q, n}, eval_term(n == 2 ? sigma_term() : nu_term(n), carrier, {c.A1.at(q)}));
    SymbolicSet init = c.D.at(q - 1);
    for (int m = 1; m <= 8; ++m) {
      if (m > 1) init = init.unite(c.A.at({q, m - 1}));
      c.S.insert_or_assign({q, m}, C.f(c.D.at(q - 1)).minus(init));
      const SymbolicSet rest = init.unite(c.U.at(q + 1)).unite(c.S.at({q, m}));
      c.Sbar_printed.insert_or_assign({q, m}, rest.complement());
      // a_{q,1} lies in neither row, so it is removed explicitly.
      c.Sbar.insert_or_assign({q, m}, rest.unite(c.A1.at(q)).complement());
    }
  }
  return c;
}

}  // namespace

AuditReport audit_bgen(const SParamPtr& s, const AuditOptions& opt) {
  const Ctx C{s};
  const auto chain = std::make_shared<const BgenChain>(derive_bgen(s));
  std::vector<Probe> probes;
  using Get = std::function<SymbolicSet(const BgenChain&)>;
  auto add = [&](std::string claim, std::string text, std::string w, SymbolicSet expected, Get get) {
    Probe base = equality(claim, text, w, expected, [chain, get] { return get(*chain); });
    probes.push_back([base, get, s] {
      AuditEntry e = base();
      e.recheck = [get, s] { return get(derive_bgen(s)).to_string(); };
      return e;
    });
  };
  for (int m = 1; m <= 4; ++m)
    add("bgen.f2m", "f^{2m}(V_0) = D_m", "m=" + std::to_string(m), C.D(m),
        [m](const BgenChain& c) { return c.f2m.at(m); });
  for (int m = 1; m <= 3; ++m)
    add("bgen.Vup", "V_{m+1} = f^{2m+2}(V_0) & f^{2m}(V_0)'", "m=" + std::to_string(m), C.V(m + 1),
        [m](const BgenChain& c) { return c.V.at(m + 1); });
  for (const auto& [key, value] : chain->vdown) {
    const auto [q, m] = key;
    const std::string w = "q=" + std::to_string(q) + ",m=" + std::to_string(m);
    add("bgen.g2m", "g^{2m}(V_q) = U_{q-m}", w, C.U(q - m), [key](const BgenChain& c) { return c.g2m.at(key); });
    add("bgen.Vdown", "V_{q-m-1} = g^{2m+2}(V_q) & g^{2m}(V_q)'", w, C.V(q - m - 1),
        [key](const BgenChain& c) { return c.vdown.at(key); });
    const int t = q - m - 1;
    add("bgen.Vdown.printed", "V_{q-m-1} = g^{2m+2}(V_q)' & g^{2m}(V_q) (printed)", w, C.V(t),
        [t](const BgenChain& c) { return c.Vdown_printed.at(t); });
  }
  for (int q = -2; q <= 2; ++q) {
    const std::string w = "q=" + std::to_string(q);
    add("bgen.D", "D_q = f^2(V_{q-1})", w, C.D(q), [q](const BgenChain& c) { return c.D.at(q); });
    add("bgen.U", "U_q = g^2(V_{q+1})", w, C.U(q), [q](const BgenChain& c) { return c.U.at(q); });
    add("bgen.A1", "A_{q,1} = g(U_{q+1}) & U_{q+1}'", w, C.A(q, 1), [q](const BgenChain& c) { return c.A1.at(q); });
    if (q != 0)
      add("bgen.A1.printed", "A_{p,1} = g(U_{q+1}) & U_{q+1}' for all q, read at p = 0 (printed)", w, C.A(0, 1),
          [q](const BgenChain& c) { return c.A1.at(q); });
    for (int n = 2; n <= 8; ++n)
      add("bgen.A", "A_{q,n} = sigma(A_{q,1}) for n = 2, nu_n(A_{q,1}) for n >= 3", w + ",n=" + std::to_string(n),
          C.A(q, n), [q, n](const BgenChain& c) { return c.A.at({q, n}); });
    for (int m = 1; m <= 8; ++m) {
      const std::string wm = w + ",m=" + std::to_string(m);
      add("bgen.S", "S_{q,m} = f(D_{q-1}) & (A_{q,1..m-1} + D_{q-1})'", wm, C.S(q, m),
          [q, m](const BgenChain& c) { return c.S.at({q, m}); });
      add("bgen.Sbar", "Sbar_{q,m} = (A_{q,1..max(m-1,1)} + D_{q-1} + U_{q+1} + S_{q,m})'", wm, C.Sbar(q, m),
          [q, m](const BgenChain& c) { return c.Sbar.at({q, m}); });
      if (m == 1)
        add("bgen.Sbar.m1.printed", "Sbar_{q,m} = (A_{q,1..m-1} + D_{q-1} + U_{q+1} + S_{q,m})' (printed, m = 1)", wm,
            C.Sbar(q, m), [q, m](const BgenChain& c) { return c.Sbar_printed.at({q, m}); });
    }
  }
  return run("bgen", s, "from V_0; p in [-2,2], m <= 8", probes, opt.jobs);
}

AuditReport audit_top(const SParamPtr& s, const AuditOptions& opt) {
  const Ctx C{s};
  std::vector<Probe> probes;
  auto add = [&](const SymbolicSet& x, const std::string& w) {
    probes.push_back(truth("top.xorxc", "f(X) != V or f(X') != V", w, true,
                           [x] { return !apply_f(x).is_full() || !apply_f(x.complement()).is_full(); }));
    probes.push_back(truth("top.max", "X != 0 and f(X) != V imply X has a maximal level", w, true, [x] {
      if (x.is_empty() || apply_f(x).is_full()) return true;
      return x.max_level().kind == LevelExtent::Kind::Level;
    }));
    // The step in the argument for the maximal level: f(X) = V exactly when
    // X meets every U_p, i.e. X has no maximal level.
    probes.push_back(truth("top.fV", "f(X) = V iff X is unbounded above", w, true, [x] {
      return apply_f(x).is_full() == (x.max_level().kind == LevelExtent::Kind::Unbounded);
    }));
  };
  add(C.D(0), "X=D(0)");
  add(C.U(0), "X=U(0)");
  add(C.none(), "X=0");
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.samples; ++i) {
    const SymbolicSet x = random_element(s, rng);
    add(x, "sample=" + std::to_string(i) + ",X=" + x.to_string());
  }
  return run("top", s, std::to_string(opt.samples) + " random X, seed " + std::to_string(opt.seed), probes, opt.jobs);
}

AuditReport audit_sent(const SParamPtr& s, const AuditOptions& opt) {
  const Ctx C{s};
  const AlgebraHandle algebra = AlgebraHandle::symbolic(s);
  const Formula phi = phi_formula();
  auto oracle = std::make_shared<const TruncationOracle>(s, TruncationSpec{});
  std::vector<Probe> probes;
  auto holds = [algebra](const Formula& f, const SymbolicSet& x) {
    return eval_formula(f, algebra, {AlgebraHandle::Element{x}});
  };
  const int M = 24;
  for (int p = -1; p <= 1; ++p) {
    probes.push_back(truth("sent.phi-if", "phi(A_{p,1}) holds", pm(p, 1), true, [=] { return holds(phi, C.A(p, 1)); }));
    for (int m = 2; m <= M; ++m) {
      probes.push_back(truth("sent.phi-only-if", "phi(A_{p,m}) fails for m > 1", pm(p, m), false,
                             [=] { return holds(phi, C.A(p, m)); }));
    }
    for (int n = 3; n <= 12; ++n) {
      const Formula tau = tau_formula(n);
      for (int m = 1; m <= M; ++m) {
        probes.push_back(truth("sent.tau", "tau_n(A_{p,m}) iff n in S_E and m = 1", pm(p, m) + ",n=" + std::to_string(n),
                               m == 1 && s->in_se(n), [=] { return holds(tau, C.A(p, m)); }));
      }
    }
    // The intersection f(A_{p,n}) & g(A_{p,n}) used to decide phi.
    auto cap = [=](int n) { return apply_f(C.A(p, n)).intersect(apply_g(C.A(p, n))); };
    probes.push_back(equality("sent.cap-n1", "f(A_{p,1}) & g(A_{p,1}) = A_{p,1} + A_{p,2} + S_{p+1,1}", pn(p, 1),
                              C.initial(p, 2).unite(C.S(p + 1, 1)), [=] { return cap(1); }));
    probes.push_back(equality("sent.cap-n1.printed", "f(A_{p,1}) & g(A_{p,1}) = A_{p,1} + A_{p,2} + S_{p,1} (printed)",
                              pn(p, 1), C.initial(p, 2).unite(C.S(p, 1)), [=] { return cap(1); }));
    for (int n = 2; n <= M; ++n) {
      const bool se = s->in_se(n);
      const SymbolicSet three = C.A(p, n - 1).unite(C.A(p, n)).unite(C.A(p, n + 1));
      probes.push_back(equality(se ? "sent.cap.se" : "sent.cap",
                                "f(A_{p,n}) & g(A_{p,n}) = A_{p,n-1} + A_{p,n} + A_{p,n+1} for n > 1", pn(p, n), three,
                                [=] { return cap(n); }));
      if (se)
        probes.push_back(equality("sent.cap.se.frame", "f(A_{p,n}) & g(A_{p,n}) = A_{p-1,1} + A_{p,n-1..n+1} for n in S_E",
                                  pn(p, n), three.unite(C.A(p - 1, 1)), [=] { return cap(n); }));
    }
    for (int n = 1; n <= 12; ++n) {
      probes.push_back(oracle_match("sent.cap.oracle", "truncation agrees on f(A_{p,n}) & g(A_{p,n})", pn(p, n), oracle,
                                    1, [=] { return cap(n); }, [=] {
                                      const IndexSet a = oracle->embed(C.A(p, n));
                                      return oracle->f(a) & oracle->g(a);
                                    }));
    }
    probes.push_back(equality("sent.g2", "g^2(A_{p,1}) = A_{p-1,1} + U_p", "p=" + std::to_string(p),
                              C.A(p - 1, 1).unite(C.U(p)), [=] { return C.g(C.A(p, 1), 2); }));
    probes.push_back(equality("sent.marker", "f(g^2(A_{p,1}) & g(A_{p,1})') = A_{p-1,1} + A_{p-1,2} + D_{p-2} + S_{p,1}",
                              "p=" + std::to_string(p),
                              C.initial(p - 1, 2).unite(C.D(p - 2)).unite(C.S(p, 1)),
                              [=] { return C.f(C.g(C.A(p, 1), 2).minus(C.g(C.A(p, 1)))); }));
  }
  for (const SymbolicSet& x : {C.none(), C.D(0), C.V(0), C.S(0, 2)}) {
    probes.push_back(truth("sent.phi-nonatom", "phi fails off the atoms", "X=" + x.to_string(), false,
                           [=] { return holds(phi, x); }));
  }
  for (int n = 3; n <= 12; ++n) {
    probes.push_back(truth("sent.exists-tau", "exists atom x with tau_n(x) iff n in S_E (search m <= 24)",
                           "n=" + std::to_string(n), s->in_se(n),
                           [=] { return exists_tau_witness(s, n, M).found(); }));
  }
  return run("sent", s, "p in [-1,1], m <= 24, n <= 12", probes, opt.jobs);
}

AuditReport cross_validate(const SParamPtr& s, const AuditOptions& opt) {
  auto small = std::make_shared<const TruncationOracle>(s, TruncationSpec{});
  std::vector<Probe> probes;
  for (Operator op : {Operator::F, Operator::G}) {
    const std::string name = op == Operator::F ? "f" : "g";
    for (const BasisSet& b : generator_grid(3, 12)) {
      const SymbolicSet x = SymbolicSet::basis(s, b);
      const std::string w = to_string(b);
      auto rule = [x, op] { return op == Operator::F ? apply_f(x) : apply_g(x); };
      probes.push_back(equality("cross." + name + ".table", name + " by rule = " + name + " by table", w,
                                op == Operator::F ? apply_f_table(x) : apply_g_table(x), rule));
      probes.push_back(oracle_match("cross." + name + ".oracle", name + " by rule agrees with the truncation", w, small, 1,
                                    rule, [small, x, op] {
                                      const IndexSet e = small->embed(x);
                                      return op == Operator::F ? small->f(e) : small->g(e);
                                    }));
    }
  }
  auto big = std::make_shared<const TruncationOracle>(s, term_suite_window());
  const SymbolicCarrier carrier(s);
  std::vector<std::pair<std::string, Term>> suite{{"beta", beta_term()}, {"sigma", sigma_term()}};
  for (int n = 3; n <= 12; ++n) suite.push_back({"nu" + std::to_string(n), nu_term(n)});
  const char* inputs[] = {"A(0,1)", "A(0,2)", "A(0,3)", "V(0)", "S(0,2)", "Sbar(0,2)", "D(0)", "U(0)",
                          "A(0,1) + A(1,4)", "D(-1) + A(0,5)"};
  for (const auto& [name, t] : suite) {
    for (const char* in : inputs) {
      const SymbolicSet x = SymbolicSet::parse(s, in);
      probes.push_back(oracle_match("cross.term", "term value agrees with the truncation (margin = depth)",
                                    "term=" + name + ",x=" + in, big, t.depth(),
                                    [=] { return eval_term(t, carrier, {x}); }, [=] { return big->eval(t, {x}); }));
    }
  }
  return run("cross", s,
             "generators p in [-3,3], m <= 12 on window p in [-8,8], m <= 48; terms on window p in [-31,31], m <= 64",
             probes, opt.jobs);
}

const std::vector<std::string>& audit_names() {
  static const std::vector<std::string> names{"fg", "desc", "4or5", "steps", "bgen", "top", "sent", "cross"};
  return names;
}

AuditReport run_audit(const std::string& name, const SParamPtr& s, const AuditOptions& opt) {
  if (name == "fg") return audit_fg(s, opt);
  if (name == "desc") return audit_desc(s, opt);
  if (name == "4or5") return audit_4or5(s, opt);
  if (name == "steps") return audit_steps(s, opt);
  if (name == "bgen") return audit_bgen(s, opt);
  if (name == "top") return audit_top(s, opt);
  if (name == "sent") return audit_sent(s, opt);
  if (name == "cross") return cross_validate(s, opt);
  throw UsageError("unknown audit '" + name + "'");
}

}  // namespace tw

#include "tw/separation.hpp"

#include <sstream>

#include "tw/parallel.hpp"

namespace tw {

namespace {

bool tau_at(const AlgebraHandle& a, const Formula& tau, const SymbolicSet& x) {
  return eval_formula(tau, a, {AlgebraHandle::Element{x}});
}

}  // namespace

bool eval_tau(const SParamPtr& s, int n, const SymbolicSet& x) {
  return tau_at(AlgebraHandle::symbolic(s), tau_formula(n), x);
}

std::string to_string(const TauSearch& r) {
  if (r.witness_m) return "Witness(A(0," + std::to_string(*r.witness_m) + "))";
  return "NoneUpTo(" + std::to_string(r.m_bound) + ")";
}

TauSearch exists_tau_witness(const SParamPtr& s, int n, int m_bound, unsigned jobs) {
  if (n < 3) throw UsageError("tau_n is defined for n >= 3");
  if (m_bound < 1) throw UsageError("m bound must be >= 1");
  const AlgebraHandle a = AlgebraHandle::symbolic(s);
  const Formula tau = tau_formula(n);
  const auto hits = parallel_map<bool>(static_cast<std::size_t>(m_bound), jobs, [&](std::size_t i) {
    return tau_at(a, tau, SymbolicSet::basis(s, {BasisKind::A, 0, static_cast<int>(i) + 1}));
  });
  TauSearch out{std::nullopt, m_bound};
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i]) {
      out.witness_m = static_cast<int>(i) + 1;
      break;
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Separated: return "Separated";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::IdenticalBelowBound: return "Identical-below-bound";
  }
  return "?";
}

SeparationReport distinguish(const SParameter& s, const SParameter& t, int n_bound, int m_bound, unsigned jobs) {
  SeparationReport r;
  r.s = s;
  r.t = t;
  r.n_bound = n_bound;
  r.m_bound = m_bound;
  r.s_truth.m_bound = r.t_truth.m_bound = m_bound;
  for (int n = 3; n <= n_bound; n += 2) {
    if (s.contains(n) != t.contains(n)) {
      r.witness_n = n;
      break;
    }
  }
  if (!r.witness_n) return r;

  const auto sp = make_sparam(s);
  const auto tp = make_sparam(t);
  r.s_truth = exists_tau_witness(sp, *r.witness_n, m_bound, jobs);
  r.t_truth = exists_tau_witness(tp, *r.witness_n, m_bound, jobs);
  // The side containing n must have the witness and the other none.
  const bool s_has = s.contains(*r.witness_n);
  const TauSearch& yes = s_has ? r.s_truth : r.t_truth;
  const TauSearch& no = s_has ? r.t_truth : r.s_truth;
  r.verdict = yes.found() && !no.found() ? Verdict::Separated : Verdict::Inconclusive;
  return r;
}

std::string SeparationReport::records() const {
  std::ostringstream os;
  os << "S=" << s.to_string() << '\n';
  os << "T=" << t.to_string() << '\n';
  os << "n_bound=" << n_bound << '\n';
  os << "m_bound=" << m_bound << '\n';
  os << "witness_n=" << (witness_n ? std::to_string(*witness_n) : "none") << '\n';
  if (witness_n) {
    os << "S_truth=" << (s_truth.found() ? "true" : "false-below-bound") << '\n';
    os << "S_search=" << to_string(s_truth) << '\n';
    os << "T_truth=" << (t_truth.found() ? "true" : "false-below-bound") << '\n';
    os << "T_search=" << to_string(t_truth) << '\n';
  }
  os << "verdict=" << to_string(verdict) << '\n';
  return os.str();
}

std::string SeparationReport::text() const {
  std::ostringstream os;
  os << "S = " << s.to_string() << "\nT = " << t.to_string() << '\n';
  if (!witness_n) {
    os << "S and T agree on every odd n <= " << n_bound << "\n";
  } else {
    os << "least differing odd n: " << *witness_n << " (in " << (s.contains(*witness_n) ? "S" : "T") << ")\n";
    os << "sentence: exists_atom x . tau_" << *witness_n << "(x)\n";
    os << "  in B_S: " << to_string(s_truth) << '\n';
    os << "  in B_T: " << to_string(t_truth) << '\n';
  }
  os << "verdict: " << to_string(verdict) << '\n';
  return os.str();
}

}  // namespace tw

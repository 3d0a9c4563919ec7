#pragma once

#include <optional>
#include <string>

#include "tw/formula.hpp"
#include "tw/symbolic.hpp"

namespace tw {

/// Exact truth of tau_n at x in B_S.
bool eval_tau(const SParamPtr& s, int n, const SymbolicSet& x);

/// Outcome of searching the atoms A_{0,m}, m <= m_bound, for a tau_n witness.
/// Not finding one is reported as "none up to the bound", not as falsity.
struct TauSearch {
  std::optional<int> witness_m;  // least m with tau_n(A_{0,m})
  int m_bound = 64;

  bool found() const { return witness_m.has_value(); }
  friend bool operator==(const TauSearch&, const TauSearch&) = default;
};

std::string to_string(const TauSearch& r);

TauSearch exists_tau_witness(const SParamPtr& s, int n, int m_bound = 64, unsigned jobs = 1);

enum class Verdict { Separated, Inconclusive, IdenticalBelowBound };

std::string to_string(Verdict v);

struct SeparationReport {
  SParameter s = SParameter::empty();
  SParameter t = SParameter::empty();
  int n_bound = 41;
  int m_bound = 64;
  std::optional<int> witness_n;  // least odd n <= n_bound where S and T differ
  TauSearch s_truth;
  TauSearch t_truth;
  Verdict verdict = Verdict::IdenticalBelowBound;

  /// `witness_n=… S_truth=… T_truth=… verdict=…` lines.
  std::string records() const;
  std::string text() const;
};

/// Compares B_S and B_T on the sentence "exists x tau_n(x)" for the least odd
/// n <= n_bound on which S and T disagree.
SeparationReport distinguish(const SParameter& s, const SParameter& t, int n_bound = 41, int m_bound = 64,
                             unsigned jobs = 1);

}  // namespace tw

#include "tw/oracle.hpp"

namespace tw {

TruncationOracle::TruncationOracle(SParamPtr s, TruncationSpec window)
    : s_(std::move(s)),
      window_(window),
      frame_(std::make_shared<const Frame>(build_truncation(window, *s_))),
      carrier_(std::make_shared<const FiniteTenseAlgebra>(as_finite_algebra(*frame_))) {}

std::size_t TruncationOracle::ordinal(const VertexId& v) const {
  return static_cast<std::size_t>(v.level - window_.level_lo) * static_cast<std::size_t>(window_.index_max) +
         static_cast<std::size_t>(v.index - 1);
}

IndexSet TruncationOracle::embed(const SymbolicSet& x) const {
  IndexSet out(frame_->size());
  for (const auto& v : x.restrict_to_window(window_)) out.insert(ordinal(v));
  return out;
}

IndexSet TruncationOracle::eval(const Term& t, const std::vector<SymbolicSet>& env) const {
  std::vector<IndexSet> fin;
  fin.reserve(env.size());
  for (const auto& x : env) fin.push_back(embed(x));
  return eval_term(t, carrier_, fin);
}

std::optional<VertexId> TruncationOracle::disagreement(const SymbolicSet& symbolic, const IndexSet& finite,
                                                       int depth) const {
  const auto inner = window_.shrunk(depth);
  if (!inner) throw UsageError("oracle window too small for depth " + std::to_string(depth));
  for (int p = inner->level_lo; p <= inner->level_hi; ++p) {
    for (int m = 1; m <= inner->index_max; ++m) {
      const VertexId v{p, m};
      if (symbolic.member(v) != finite.contains(ordinal(v))) return v;
    }
  }
  return std::nullopt;
}

TruncationSpec term_suite_window() { return {-31, 31, 64}; }

}  // namespace tw

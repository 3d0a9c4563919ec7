#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tw/frames.hpp"
#include "tw/symbolic.hpp"
#include "tw/terms.hpp"

namespace tw {

/// Finite truncation of <V; R_S> used as an independent check on the
/// symbolic engine. A value computed through d applications of f or g is
/// only compared on the window shrunk by d.
class TruncationOracle {
 public:
  TruncationOracle(SParamPtr s, TruncationSpec window);

  const TruncationSpec& window() const { return window_; }
  const Frame& frame() const { return *frame_; }
  const FiniteCarrier& carrier() const { return carrier_; }

  IndexSet embed(const SymbolicSet& x) const;
  std::size_t ordinal(const VertexId& v) const;

  IndexSet f(const IndexSet& x) const { return carrier_.f(x); }
  IndexSet g(const IndexSet& x) const { return carrier_.g(x); }
  /// Evaluates t on the truncation with the variables bound to embedded sets.
  IndexSet eval(const Term& t, const std::vector<SymbolicSet>& env) const;

  /// First vertex of the window shrunk by `depth` on which the two values
  /// differ. Throws UsageError when the shrunk window is empty.
  std::optional<VertexId> disagreement(const SymbolicSet& symbolic, const IndexSet& finite, int depth) const;
  bool agrees(const SymbolicSet& symbolic, const IndexSet& finite, int depth) const {
    return !disagreement(symbolic, finite, depth);
  }

 private:
  SParamPtr s_;
  TruncationSpec window_;
  std::shared_ptr<const Frame> frame_;
  FiniteCarrier carrier_;
};

/// Window big enough for the term suite (nu_12 has depth 29).
TruncationSpec term_suite_window();

}  // namespace tw

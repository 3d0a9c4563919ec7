#pragma once

// Mechanical checks of the combinatorial facts about B_S: every claim is
// evaluated on the symbolic engine and, where the depth allows, against a
// finite truncation of the frame.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tw/symbolic.hpp"

namespace tw {

enum class AuditStatus { Confirmed, Counterexample, Skipped };

std::string to_string(AuditStatus s);

struct AuditEntry {
  std::string claim;      // stable id, e.g. "fg.13"
  std::string statement;  // readable form of the claim
  std::string witness;    // instance, without spaces
  AuditStatus status = AuditStatus::Confirmed;
  std::string expected;
  std::string actual;
  std::string reason;  // for Skipped
  /// Recomputes `actual` from the witness alone.
  std::function<std::string()> recheck;
};

struct AuditReport {
  std::string lemma;
  std::string sparam;
  std::string grid;
  std::vector<AuditEntry> entries;

  std::size_t count(AuditStatus s) const;
  /// Per-claim summary followed by every counterexample and skip.
  std::string text() const;
  /// One `lemma=… claim=… status=… witness=…` line per entry.
  std::string records() const;
};

/// Known differences between printed statements and the frame, as
/// `lemma=<id> claim=<id>` lines ('#' starts a comment).
class Allowlist {
 public:
  static Allowlist parse(std::string_view text);
  static Allowlist load(const std::string& path);

  bool covers(const std::string& lemma, const std::string& claim) const {
    return items_.count({lemma, claim}) != 0;
  }
  std::size_t size() const { return items_.size(); }

 private:
  std::set<std::pair<std::string, std::string>> items_;
};

/// Counterexamples whose (lemma, claim) is not allowlisted.
std::size_t unexpected_counterexamples(const AuditReport& r, const Allowlist& allow);

struct AuditOptions {
  std::uint64_t seed = 0xB5;
  unsigned jobs = 1;
  int samples = 200;
};

/// Random element of B_S: a union of at most 6 generators with |p| <= 3 and
/// m <= 12.
SymbolicSet random_element(const SParamPtr& s, std::mt19937_64& rng);

AuditReport audit_fg(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport audit_desc(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport audit_4or5(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport audit_steps(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport audit_bgen(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport audit_top(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport audit_sent(const SParamPtr& s, const AuditOptions& opt = {});
AuditReport cross_validate(const SParamPtr& s, const AuditOptions& opt = {});

/// fg, desc, 4or5, steps, bgen, top, sent, cross.
const std::vector<std::string>& audit_names();
/// Throws UsageError for an unknown name.
AuditReport run_audit(const std::string& name, const SParamPtr& s, const AuditOptions& opt = {});

/// The five parameters used by suite commands: empty, {3}, {3,7}, O, O minus {5}.
std::vector<SParameter> default_family();

}  // namespace tw

#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace tw {

enum class Tail { AllOut, AllIn };

/// An eventually-constant subset S of the odd naturals >= 3.
///
/// Odd n <= bound belong to S iff listed explicitly; odd n > bound follow the
/// tail. The stored form is canonical (bound is as small as possible and
/// never below 3), so two parameters denote the same set iff they compare
/// equal.
class SParameter {
 public:
  SParameter(std::set<int> explicit_members, int bound, Tail tail);

  static SParameter empty() { return SParameter({}, 3, Tail::AllOut); }
  static SParameter all_odd() { return SParameter({3}, 3, Tail::AllIn); }

  /// Parses `{3,7} tail=out bound=9`, `O`, `empty`, with an optional
  /// leading `S =`. Missing tail means out; missing bound means the largest
  /// listed member (at least 3).
  static SParameter parse(std::string_view text);

  /// Membership in S. Only meaningful for odd n >= 3; returns false otherwise.
  bool contains(int n) const;

  /// Membership in S_E = S together with every even natural.
  bool in_se(int n) const {
    if (n < 1) return false;
    if (n % 2 == 0) return true;
    return contains(n);
  }

  const std::set<int>& explicit_members() const { return explicit_; }
  int bound() const { return bound_; }
  Tail tail() const { return tail_; }

  /// The set T = {n > 1 : n not in S_E, n >= m}, which is exactly the odd
  /// n >= max(m, 3) outside S.
  bool t_empty(int m) const;
  bool t_infinite(int m) const;
  /// Least element of T; requires !t_empty(m).
  int t_min(int m) const;
  /// Greatest element of T; requires T finite and nonempty.
  int t_max(int m) const;

  /// Canonical text form, parseable by parse().
  std::string to_string() const;

  friend bool operator==(const SParameter&, const SParameter&) = default;

 private:
  std::set<int> explicit_;
  int bound_;
  Tail tail_;
};

}  // namespace tw

#include "tw/sparam.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "tw/error.hpp"

namespace tw {

SParameter::SParameter(std::set<int> explicit_members, int bound, Tail tail)
    : explicit_(std::move(explicit_members)), bound_(bound), tail_(tail) {
  if (bound_ < 3) throw UsageError("S-parameter bound must be >= 3");
  for (int n : explicit_) {
    if (n < 3 || n % 2 == 0) throw UsageError("S-parameter members must be odd and >= 3, got " + std::to_string(n));
    if (n > bound_) throw UsageError("S-parameter member " + std::to_string(n) + " exceeds bound " + std::to_string(bound_));
  }
  // Lower the bound while the largest odd <= bound already agrees with the tail.
  const bool tail_in = tail_ == Tail::AllIn;
  while (bound_ > 3) {
    const int top = bound_ % 2 == 1 ? bound_ : bound_ - 1;
    if (bound_ % 2 == 0) {
      --bound_;
      continue;
    }
    if ((explicit_.count(top) > 0) != tail_in) break;
    explicit_.erase(top);
    bound_ -= 2;
  }
}

bool SParameter::contains(int n) const {
  if (n < 3 || n % 2 == 0) return false;
  if (n <= bound_) return explicit_.count(n) > 0;
  return tail_ == Tail::AllIn;
}

bool SParameter::t_empty(int m) const {
  if (tail_ == Tail::AllOut) return false;
  const int start = std::max(m, 3);
  for (int n = start % 2 == 0 ? start + 1 : start; n <= bound_; n += 2)
    if (!contains(n)) return false;
  return true;
}

bool SParameter::t_infinite(int /*m*/) const { return tail_ == Tail::AllOut; }

int SParameter::t_min(int m) const {
  const int start = std::max(m, 3);
  for (int n = start % 2 == 0 ? start + 1 : start;; n += 2)
    if (!contains(n)) return n;
}

int SParameter::t_max(int m) const {
  const int start = std::max(m, 3);
  int best = -1;
  for (int n = start % 2 == 0 ? start + 1 : start; n <= bound_; n += 2)
    if (!contains(n)) best = n;
  return best;
}

std::string SParameter::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int n : explicit_) {
    if (!first) out << ',';
    out << n;
    first = false;
  }
  out << "} tail=" << (tail_ == Tail::AllIn ? "in" : "out") << " bound=" << bound_;
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  return value;
}

}  // namespace

SParameter SParameter::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() >= 1 && s[0] == 'S') {
    auto rest = trim(s.substr(1));
    if (!rest.empty() && rest[0] == '=') s = trim(rest.substr(1));
  }
  if (s == "O") return all_odd();
  if (s == "empty" || s == "{}") return empty();
  if (s.empty() || s[0] != '{') throw ParseError("S-parameter must start with '{', 'O' or 'empty': '" + std::string(text) + "'");
  const auto close = s.find('}');
  if (close == std::string_view::npos) throw ParseError("S-parameter missing '}'");

  std::set<int> members;
  std::string_view body = s.substr(1, close - 1);
  while (!trim(body).empty()) {
    const auto comma = body.find(',');
    members.insert(parse_int(body.substr(0, comma), "S member"));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }

  Tail tail = Tail::AllOut;
  std::optional<int> bound;
  std::istringstream opts{std::string(s.substr(close + 1))};
  std::string tok;
  while (opts >> tok) {
    if (tok == "tail=in") {
      tail = Tail::AllIn;
    } else if (tok == "tail=out") {
      tail = Tail::AllOut;
    } else if (tok.rfind("bound=", 0) == 0) {
      bound = parse_int(std::string_view(tok).substr(6), "bound");
    } else {
      throw ParseError("unknown S-parameter option '" + tok + "'");
    }
  }
  int b = bound.value_or(std::max(3, members.empty() ? 3 : *members.rbegin()));
  return SParameter(std::move(members), b, tail);
}

}  // namespace tw

#include "tw/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "tw/error.hpp"

namespace tw {

namespace {

bool tail_rule(const SParameter& s, const LevelSet& row, int n) {
  return s.in_se(n) ? row.in_tail : row.out_tail;
}

LevelSet row_from_mode(Mode m) { return m == Mode::Full ? full_row() : empty_row(); }

// Row with explicit prefix up to `threshold`, built from a membership predicate.
template <typename Pred>
LevelSet materialize(int threshold, bool in_tail, bool out_tail, Pred member) {
  LevelSet r;
  r.threshold = threshold;
  r.prefix.resize(static_cast<std::size_t>(threshold - 1));
  for (int n = 1; n < threshold; ++n) r.prefix[static_cast<std::size_t>(n - 1)] = member(n);
  r.in_tail = in_tail;
  r.out_tail = out_tail;
  return r;
}

bool row_infinite(const LevelSet& r) { return r.in_tail || r.out_tail; }

bool row_empty(const LevelSet& r) {
  if (row_infinite(r)) return false;
  return std::none_of(r.prefix.begin(), r.prefix.end(), [](bool b) { return b; });
}

std::optional<int> row_min(const SParameter& s, const LevelSet& r) {
  for (int n = 1; n < r.threshold; ++n)
    if (r.prefix[static_cast<std::size_t>(n - 1)]) return n;
  if (!row_infinite(r)) return std::nullopt;
  // Both S_E and its complement recur beyond the bound when they are live tails.
  for (int n = r.threshold;; ++n)
    if (tail_rule(s, r, n)) return n;
}

// Greatest member of a finite nonempty row.
int row_max(const LevelSet& r) {
  for (int n = r.threshold - 1; n >= 1; --n)
    if (r.prefix[static_cast<std::size_t>(n - 1)]) return n;
  return 0;
}

bool row_meets_se(const SParameter& s, const LevelSet& r) {
  if (r.in_tail) return true;
  for (int n = 1; n < r.threshold; ++n)
    if (r.prefix[static_cast<std::size_t>(n - 1)] && s.in_se(n)) return true;
  return false;
}

std::size_t row_count(const LevelSet& r) {
  return static_cast<std::size_t>(std::count(r.prefix.begin(), r.prefix.end(), true));
}

}  // namespace

bool row_member(const SParameter& s, const LevelSet& row, int n) {
  if (n < 1) return false;
  if (n < row.threshold) return row.prefix[static_cast<std::size_t>(n - 1)];
  return tail_rule(s, row, n);
}

LevelSet full_row() { return LevelSet{1, {}, true, true}; }
LevelSet empty_row() { return LevelSet{1, {}, false, false}; }

LevelSet canonical_row(const SParameter& s, LevelSet row) {
  if (s.tail() == Tail::AllIn && row.out_tail != row.in_tail) {
    // Every index above the bound lies in S_E, so out_tail only matters up to
    // the bound: spell those indices out and retire the out_tail.
    const int t = std::max(row.threshold, s.bound() + 1);
    row = materialize(t, row.in_tail, row.in_tail, [&](int n) { return row_member(s, row, n); });
  }
  while (row.threshold > 1 && row.prefix.back() == tail_rule(s, row, row.threshold - 1)) {
    row.prefix.pop_back();
    --row.threshold;
  }
  return row;
}

std::string to_string(const BasisSet& b) {
  const auto p = std::to_string(b.level);
  const auto m = std::to_string(b.index);
  switch (b.kind) {
    case BasisKind::A: return "A(" + p + "," + m + ")";
    case BasisKind::Srow: return "S(" + p + "," + m + ")";
    case BasisKind::SbarRow: return "Sbar(" + p + "," + m + ")";
    case BasisKind::D: return "D(" + p + ")";
    case BasisKind::U: return "U(" + p + ")";
    case BasisKind::Vrow: return "V(" + p + ")";
  }
  return "?";
}

std::string to_string(const Cardinality& c) {
  return c.infinite ? std::string("Infinite") : "Finite(" + std::to_string(c.count) + ")";
}

std::string to_string(const LevelExtent& e) {
  switch (e.kind) {
    case LevelExtent::Kind::NoneEmpty: return "NoneEmpty";
    case LevelExtent::Kind::Unbounded: return "Unbounded";
    case LevelExtent::Kind::Level: return "Level(" + std::to_string(e.level) + ")";
  }
  return "?";
}

SymbolicSet::SymbolicSet(SParamPtr s, Mode below, Mode above, int lo, std::vector<LevelSet> rows)
    : s_(std::move(s)), below_(below), above_(above), lo_(lo), rows_(std::move(rows)) {
  canonicalize();
}

void SymbolicSet::canonicalize() {
  for (auto& r : rows_) r = canonical_row(*s_, std::move(r));
  const LevelSet below_row = row_from_mode(below_);
  const LevelSet above_row = row_from_mode(above_);
  std::size_t first = 0;
  std::size_t last = rows_.size();
  while (first < last && rows_[first] == below_row) ++first;
  while (last > first && rows_[last - 1] == above_row) --last;
  if (first != 0 || last != rows_.size()) {
    rows_ = std::vector<LevelSet>(rows_.begin() + static_cast<std::ptrdiff_t>(first),
                                  rows_.begin() + static_cast<std::ptrdiff_t>(last));
    lo_ += static_cast<int>(first);
  }
  if (rows_.empty() && below_ == above_) lo_ = 0;
}

SymbolicSet SymbolicSet::empty(SParamPtr s) { return SymbolicSet(std::move(s), Mode::Empty, Mode::Empty, 0, {}); }
SymbolicSet SymbolicSet::full(SParamPtr s) { return SymbolicSet(std::move(s), Mode::Full, Mode::Full, 0, {}); }

SymbolicSet level_set(SParamPtr s, int p) { return SymbolicSet::basis(std::move(s), {BasisKind::Vrow, p, 1}); }

SymbolicSet SymbolicSet::basis(SParamPtr s, const BasisSet& b) {
  if (b.index < 1 && (b.kind == BasisKind::A || b.kind == BasisKind::Srow || b.kind == BasisKind::SbarRow))
    throw UsageError("basis index must be >= 1 in " + tw::to_string(b));
  const int m = b.index;
  switch (b.kind) {
    case BasisKind::A:
      return SymbolicSet(s, Mode::Empty, Mode::Empty, b.level,
                         {materialize(m + 1, false, false, [m](int n) { return n == m; })});
    case BasisKind::Srow:
      return SymbolicSet(s, Mode::Empty, Mode::Empty, b.level, {materialize(m, true, false, [](int) { return false; })});
    case BasisKind::SbarRow:
      // Index 1 is outside S_E but excluded from Sbar.
      return SymbolicSet(s, Mode::Empty, Mode::Empty, b.level,
                         {materialize(std::max(m, 2), false, true, [](int) { return false; })});
    case BasisKind::D: return SymbolicSet(s, Mode::Full, Mode::Empty, b.level + 1, {});
    case BasisKind::U: return SymbolicSet(s, Mode::Empty, Mode::Full, b.level, {});
    case BasisKind::Vrow: return SymbolicSet(s, Mode::Empty, Mode::Empty, b.level, {full_row()});
  }
  throw UsageError("unknown basis kind");
}

LevelSet SymbolicSet::row_at(int level) const {
  if (level < lo_) return row_from_mode(below_);
  const auto offset = static_cast<std::size_t>(level - lo_);
  if (offset >= rows_.size()) return row_from_mode(above_);
  return rows_[offset];
}

bool SymbolicSet::member(const VertexId& v) const {
  if (v.index < 1) return false;
  if (v.level < lo_) return below_ == Mode::Full;
  const auto offset = static_cast<std::size_t>(v.level - lo_);
  if (offset >= rows_.size()) return above_ == Mode::Full;
  return row_member(*s_, rows_[offset], v.index);
}

bool SymbolicSet::is_empty() const { return below_ == Mode::Empty && above_ == Mode::Empty && rows_.empty(); }
bool SymbolicSet::is_full() const { return below_ == Mode::Full && above_ == Mode::Full && rows_.empty(); }

void SymbolicSet::check_same(const SymbolicSet& o) const {
  if (s_ != o.s_ && !(*s_ == *o.s_))
    throw UsageError("symbolic sets over different S-parameters: " + s_->to_string() + " vs " + o.s_->to_string());
}

template <typename RowOp, typename ModeOp>
SymbolicSet SymbolicSet::combine(const SymbolicSet& o, RowOp row_op, ModeOp mode_op) const {
  check_same(o);
  const int lo = std::min(lo_, o.lo_);
  const int hi = std::max(lo_ + static_cast<int>(rows_.size()), o.lo_ + static_cast<int>(o.rows_.size()));
  std::vector<LevelSet> rows;
  rows.reserve(static_cast<std::size_t>(hi - lo));
  for (int p = lo; p < hi; ++p) {
    const LevelSet a = row_at(p);
    const LevelSet b = o.row_at(p);
    const int t = std::max(a.threshold, b.threshold);
    rows.push_back(materialize(t, row_op(a.in_tail, b.in_tail), row_op(a.out_tail, b.out_tail), [&](int n) {
      return row_op(row_member(*s_, a, n), row_member(*s_, b, n));
    }));
  }
  return SymbolicSet(s_, mode_op(below_, o.below_), mode_op(above_, o.above_), lo, std::move(rows));
}

SymbolicSet SymbolicSet::unite(const SymbolicSet& o) const {
  return combine(o, [](bool a, bool b) { return a || b; },
                 [](Mode a, Mode b) { return a == Mode::Full || b == Mode::Full ? Mode::Full : Mode::Empty; });
}

SymbolicSet SymbolicSet::intersect(const SymbolicSet& o) const {
  return combine(o, [](bool a, bool b) { return a && b; },
                 [](Mode a, Mode b) { return a == Mode::Full && b == Mode::Full ? Mode::Full : Mode::Empty; });
}

SymbolicSet SymbolicSet::complement() const {
  std::vector<LevelSet> rows = rows_;
  for (auto& r : rows) {
    r.prefix.flip();
    r.in_tail = !r.in_tail;
    r.out_tail = !r.out_tail;
  }
  auto flip = [](Mode m) { return m == Mode::Full ? Mode::Empty : Mode::Full; };
  return SymbolicSet(s_, flip(below_), flip(above_), lo_, std::move(rows));
}

bool SymbolicSet::is_equal(const SymbolicSet& o) const {
  check_same(o);
  return below_ == o.below_ && above_ == o.above_ && lo_ == o.lo_ && rows_ == o.rows_;
}

SymbolicSet SymbolicSet::shift(int delta) const {
  if (rows_.empty() && below_ == above_) return *this;
  return SymbolicSet(s_, below_, above_, lo_ + delta, rows_);
}

Cardinality SymbolicSet::cardinality() const {
  if (below_ == Mode::Full || above_ == Mode::Full) return Cardinality::infinity();
  std::size_t total = 0;
  for (const auto& r : rows_) {
    if (row_infinite(r)) return Cardinality::infinity();
    total += row_count(r);
  }
  return Cardinality::finite(total);
}

LevelExtent SymbolicSet::max_level() const {
  if (above_ == Mode::Full) return LevelExtent::unbounded();
  for (std::size_t i = rows_.size(); i-- > 0;)
    if (!row_empty(rows_[i])) return LevelExtent::at(lo_ + static_cast<int>(i));
  if (below_ == Mode::Full) return LevelExtent::at(lo_ - 1);
  return LevelExtent::none();
}

LevelExtent SymbolicSet::min_level() const {
  if (below_ == Mode::Full) return LevelExtent::unbounded();
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (!row_empty(rows_[i])) return LevelExtent::at(lo_ + static_cast<int>(i));
  if (above_ == Mode::Full) return LevelExtent::at(lo_ + static_cast<int>(rows_.size()));
  return LevelExtent::none();
}

std::vector<VertexId> SymbolicSet::restrict_to_window(const TruncationSpec& spec) const {
  std::vector<VertexId> out;
  for (int p = spec.level_lo; p <= spec.level_hi; ++p) {
    const LevelSet r = row_at(p);
    for (int m = 1; m <= spec.index_max; ++m)
      if (row_member(*s_, r, m)) out.push_back({p, m});
  }
  return out;
}

void SymbolicSet::validate() const {
  auto fail = [](const std::string& what) { throw std::logic_error("non-canonical symbolic set: " + what); };
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (r.threshold < 1 || r.prefix.size() != static_cast<std::size_t>(r.threshold - 1))
      fail("row " + std::to_string(lo_ + static_cast<int>(i)) + " prefix length");
    if (!(canonical_row(*s_, r) == r)) fail("row " + std::to_string(lo_ + static_cast<int>(i)) + " threshold not minimal");
  }
  if (!rows_.empty() && rows_.front() == row_from_mode(below_)) fail("window not minimal below");
  if (!rows_.empty() && rows_.back() == row_from_mode(above_)) fail("window not minimal above");
  if (rows_.empty() && below_ == above_ && lo_ != 0) fail("split level on a uniform set");
}

std::vector<BasisSet> decompose_to_basis(const SymbolicSet& x) {
  std::vector<BasisSet> out;
  if (x.below() == Mode::Full) out.push_back({BasisKind::D, x.lo() - 1, 1});
  for (std::size_t i = 0; i < x.rows().size(); ++i) {
    const int p = x.lo() + static_cast<int>(i);
    const LevelSet& r = x.rows()[i];
    for (int n = 1; n < r.threshold; ++n)
      if (r.prefix[static_cast<std::size_t>(n - 1)]) out.push_back({BasisKind::A, p, n});
    if (r.out_tail && r.threshold == 1) out.push_back({BasisKind::A, p, 1});
    if (r.in_tail) out.push_back({BasisKind::Srow, p, r.threshold});
    // Under an AllIn tail the out-tail may denote nothing; leave it out.
    if (r.out_tail && !x.sparam()->t_empty(std::max(r.threshold, 2)))
      out.push_back({BasisKind::SbarRow, p, std::max(r.threshold, 2)});
  }
  if (x.above() == Mode::Full) out.push_back({BasisKind::U, x.lo() + static_cast<int>(x.rows().size()), 1});
  return out;
}

std::string SymbolicSet::to_string() const {
  if (is_empty()) return "0";
  if (is_full()) return "V";
  std::vector<std::string> parts;
  if (below_ == Mode::Full) parts.push_back(tw::to_string(BasisSet{BasisKind::D, lo_ - 1, 1}));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int p = lo_ + static_cast<int>(i);
    if (rows_[i] == full_row()) {
      parts.push_back(tw::to_string(BasisSet{BasisKind::Vrow, p, 1}));
      continue;
    }
    SymbolicSet row_only(s_, Mode::Empty, Mode::Empty, p, {rows_[i]});
    for (const auto& b : decompose_to_basis(row_only)) parts.push_back(tw::to_string(b));
  }
  if (above_ == Mode::Full)
    parts.push_back(tw::to_string(BasisSet{BasisKind::U, lo_ + static_cast<int>(rows_.size()), 1}));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  int integer() {
    skip_ws();
    const auto start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int value = 0;
    const char* b = text_.data() + start;
    if (*b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) fail("expected integer");
    return value;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("symbolic set syntax at column " + std::to_string(pos_ + 1) + ": " + msg + " in '" +
                     std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolicSet SymbolicSet::parse(SParamPtr s, std::string_view text) {
  SetParser in(text);
  SymbolicSet acc = empty(s);
  if (in.at_end()) in.fail("empty input");
  do {
    const std::string name = in.ident();
    if (name == "0" || name.empty()) {
      if (name.empty()) in.fail("expected a basis name");
      continue;
    }
    if (name == "V" && !in.consume('(')) {
      acc = acc.unite(full(s));
      continue;
    }
    if (name == "V") {
      const int p = in.integer();
      in.expect(')');
      acc = acc.unite(basis(s, {BasisKind::Vrow, p, 1}));
      continue;
    }
    if (name == "1") {
      acc = acc.unite(full(s));
      continue;
    }
    BasisKind kind;
    bool indexed = true;
    if (name == "A") {
      kind = BasisKind::A;
    } else if (name == "S") {
      kind = BasisKind::Srow;
    } else if (name == "Sbar") {
      kind = BasisKind::SbarRow;
    } else if (name == "D") {
      kind = BasisKind::D;
      indexed = false;
    } else if (name == "U") {
      kind = BasisKind::U;
      indexed = false;
    } else {
      in.fail("unknown basis name '" + name + "'");
    }
    in.expect('(');
    BasisSet b{kind, in.integer(), 1};
    if (indexed) {
      in.expect(',');
      b.index = in.integer();
      if (b.index < 1) in.fail("index must be >= 1");
    }
    in.expect(')');
    acc = acc.unite(basis(s, b));
  } while (in.consume('+'));
  if (!in.at_end()) in.fail("trailing input");
  return acc;
}

// Successors of a_{p,m}: every vertex on a lower level, a_{p,n} for n <= m+1,
// and, when m = 1, every a_{p+1,n} with n in S_E. So f(X) is everything below
// the top level h of X, the down-closure plus one step of X's row h, and the
// S_E pattern on level h+1 if a_{h,1} is in X (and on level h if a_{h-1,1}
// is).
SymbolicSet apply_f(const SymbolicSet& x) {
  const auto& s = x.sparam();
  if (x.is_empty()) return x;
  if (x.above() == Mode::Full) return SymbolicSet::full(s);
  const LevelExtent top = x.max_level();
  const int h = top.level;
  const LevelSet row = x.row_at(h);

  LevelSet closure;
  if (row_infinite(row)) {
    closure = full_row();
  } else {
    const int reach = row_max(row) + 1;
    closure = materialize(reach + 1, false, false, [reach](int n) { return n <= reach; });
  }
  std::vector<LevelSet> rows{closure};
  if (row_member(*s, row, 1)) rows.push_back(LevelSet{1, {}, true, false});
  SymbolicSet out(s, Mode::Full, Mode::Empty, h, std::move(rows));
  if (x.member({h - 1, 1})) out = out.unite(SymbolicSet::basis(s, {BasisKind::Srow, h, 1}));
  return out;
}

// Predecessors of a_{p,m}: every vertex on a higher level, a_{p,k} for
// k >= m-1, and a_{p-1,1} when m is in S_E. So g(X) is everything above the
// bottom level l of X, the up-closure plus one step of X's row l, a_{l,1} if
// row l+1 of X meets S_E, and a_{l-1,1} if row l meets S_E.
SymbolicSet apply_g(const SymbolicSet& x) {
  const auto& s = x.sparam();
  if (x.is_empty()) return x;
  if (x.below() == Mode::Full) return SymbolicSet::full(s);
  const int l = x.min_level().level;
  const LevelSet row = x.row_at(l);
  const LevelSet next = x.row_at(l + 1);

  const int start = std::max(*row_min(*s, row) - 1, 1);
  const bool first_from_next = row_meets_se(*s, next);
  LevelSet own = materialize(start, true, true, [&](int n) { return n == 1 && first_from_next; });
  LevelSet below = materialize(2, false, false, [&](int n) { return n == 1 && row_meets_se(*s, row); });
  return SymbolicSet(s, Mode::Empty, Mode::Full, l - 1, {below, own});
}

}  // namespace tw

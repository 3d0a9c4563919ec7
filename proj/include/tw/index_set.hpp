#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "tw/kernels.hpp"

namespace tw {

/// A finite set of ordinals {0, ..., universe-1}. Used for vertex sets of
/// frames and for elements of finite complex algebras.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members) : IndexSet(universe) {
    for (auto m : members) insert(m);
  }

  static IndexSet full(std::size_t universe) {
    IndexSet s(universe);
    for (auto& w : s.words_) w = ~kernels::Word{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void insert(std::size_t i) { words_[i >> 6] |= kernels::Word{1} << (i & 63); }
  void erase(std::size_t i) { words_[i >> 6] &= ~(kernels::Word{1} << (i & 63)); }

  std::size_t size() const { return kernels::popcount(words_); }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool is_full() const { return size() == universe_; }

  IndexSet& operator|=(const IndexSet& o) {
    kernels::or_into(words_, o.words_);
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    kernels::and_into(words_, o.words_);
    return *this;
  }
  /// Set difference.
  IndexSet& operator-=(const IndexSet& o) {
    kernels::andnot_into(words_, o.words_);
    return *this;
  }
  IndexSet& operator^=(const IndexSet& o) {
    kernels::xor_into(words_, o.words_);
    return *this;
  }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }
  friend IndexSet operator^(IndexSet a, const IndexSet& b) { return a ^= b; }

  IndexSet complement() const {
    IndexSet out = full(universe_);
    out -= *this;
    return out;
  }

  bool intersects(const IndexSet& o) const { return kernels::intersects(words_, o.words_); }
  bool is_subset_of(const IndexSet& o) const { return kernels::is_subset(words_, o.words_); }

  /// Members in ascending order.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        out.push_back(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        fn(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
  }

  /// Bits of the set when the universe fits in one word.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    return a.members() <=> b.members();
  }

 private:
  void trim() {
    if (universe_ % 64 != 0 && !words_.empty()) words_.back() &= (kernels::Word{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<kernels::Word> words_;
};

}  // namespace tw

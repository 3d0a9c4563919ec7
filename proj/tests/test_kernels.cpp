#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "tw/index_set.hpp"
#include "tw/kernels.hpp"

using namespace tw;
using kernels::Word;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<Word> w(n);
  for (auto& x : w) {
    x = rng();
    // Sparse and dense words both matter for the early-exit kernels.
    if (rng() % 3 == 0) x &= rng() & rng();
    if (rng() % 5 == 0) x = 0;
  }
  return w;
}

}  // namespace

TEST_CASE("every kernel table matches the scalar reference") {
  const auto& ref = kernels::scalar_table();
  std::mt19937_64 rng(7);
  for (const auto* table : kernels::available()) {
    CAPTURE(kernels::isa_name(table->isa));
    for (std::size_t n = 0; n <= 67; ++n) {
      for (int rep = 0; rep < 20; ++rep) {
        const auto a = random_words(rng, n);
        auto b = random_words(rng, n);
        if (rep % 4 == 0) b = a;  // forces subset / intersect edge cases
        using Op = void (*)(Word*, const Word*, std::size_t);
        for (auto pick : {0, 1, 2, 3}) {
          Op mine = pick == 0 ? table->or_into : pick == 1 ? table->and_into : pick == 2 ? table->andnot_into : table->xor_into;
          Op theirs = pick == 0 ? ref.or_into : pick == 1 ? ref.and_into : pick == 2 ? ref.andnot_into : ref.xor_into;
          auto x = a, y = a;
          mine(x.data(), b.data(), n);
          theirs(y.data(), b.data(), n);
          CHECK(x == y);
        }
        CHECK(table->intersects(a.data(), b.data(), n) == ref.intersects(a.data(), b.data(), n));
        CHECK(table->is_subset(a.data(), b.data(), n) == ref.is_subset(a.data(), b.data(), n));
        CHECK(table->popcount(a.data(), n) == ref.popcount(a.data(), n));
      }
    }
  }
}

TEST_CASE("scalar reference agrees with per-bit definitions") {
  std::mt19937_64 rng(11);
  const auto& ref = kernels::scalar_table();
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto a = random_words(rng, n);
    const auto b = random_words(rng, n);
    bool meet = false, sub = true;
    std::size_t pop = 0;
    for (std::size_t i = 0; i < n * 64; ++i) {
      const bool x = (a[i / 64] >> (i % 64)) & 1U;
      const bool y = (b[i / 64] >> (i % 64)) & 1U;
      meet |= x && y;
      sub &= !x || y;
      pop += x;
    }
    CHECK(ref.intersects(a.data(), b.data(), n) == meet);
    CHECK(ref.is_subset(a.data(), b.data(), n) == sub);
    CHECK(ref.popcount(a.data(), n) == pop);
  }
}

TEST_CASE("IndexSet operations agree with std::set") {
  std::mt19937_64 rng(3);
  for (std::size_t universe : {1u, 63u, 64u, 65u, 200u, 300u}) {
    for (int rep = 0; rep < 30; ++rep) {
      IndexSet a(universe), b(universe);
      std::set<std::size_t> sa, sb;
      for (std::size_t i = 0; i < universe; ++i) {
        if (rng() % 3 == 0) { a.insert(i); sa.insert(i); }
        if (rng() % 2 == 0) { b.insert(i); sb.insert(i); }
      }
      std::set<std::size_t> u, m, d;
      for (std::size_t i = 0; i < universe; ++i) {
        if (sa.count(i) || sb.count(i)) u.insert(i);
        if (sa.count(i) && sb.count(i)) m.insert(i);
        if (sa.count(i) && !sb.count(i)) d.insert(i);
      }
      auto as_set = [](const IndexSet& x) {
        const auto v = x.members();
        return std::set<std::size_t>(v.begin(), v.end());
      };
      CHECK(as_set(a | b) == u);
      CHECK(as_set(a & b) == m);
      CHECK(as_set(a - b) == d);
      CHECK((a | b).size() == u.size());
      CHECK(a.complement().size() == universe - sa.size());
      CHECK(a.intersects(b) == !m.empty());
      CHECK(a.is_subset_of(b) == (d.empty()));
    }
  }
}

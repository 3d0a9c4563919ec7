#include "tw/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#define TW_AVX2 __attribute__((target("avx2")))

namespace tw::kernels {
namespace {

// Four 64-bit words per 256-bit lane; tails fall back to scalar.
constexpr std::size_t kLane = 4;

TW_AVX2 inline __m256i load(const Word* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
TW_AVX2 inline void store(Word* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

TW_AVX2 void or_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

TW_AVX2 void and_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

TW_AVX2 void andnot_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(a, b) computes ~a & b.
  for (; i + kLane <= n; i += kLane)
    store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
  for (; i < n; ++i) dst[i] &= ~src[i];
}

TW_AVX2 void xor_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(dst + i, _mm256_xor_si256(load(dst + i), load(src + i)));
  for (; i < n; ++i) dst[i] ^= src[i];
}

TW_AVX2 bool intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane)
    if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

TW_AVX2 bool is_subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  // testc(b, a) is 1 iff (~b & a) == 0.
  for (; i + kLane <= n; i += kLane)
    if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// AVX2 has no vector popcount; the win here is from the unrolled scalar
// popcnt instructions enabled by the target attribute.
TW_AVX2 std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t t0 = 0, t1 = 0, t2 = 0, t3 = 0;
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    t0 += static_cast<std::size_t>(__builtin_popcountll(a[i]));
    t1 += static_cast<std::size_t>(__builtin_popcountll(a[i + 1]));
    t2 += static_cast<std::size_t>(__builtin_popcountll(a[i + 2]));
    t3 += static_cast<std::size_t>(__builtin_popcountll(a[i + 3]));
  }
  for (; i < n; ++i) t0 += static_cast<std::size_t>(__builtin_popcountll(a[i]));
  return t0 + t1 + t2 + t3;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::Avx2, or_into,  and_into, andnot_into,
                                 xor_into,  intersects, is_subset, popcount};
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? &table : nullptr;
}

}  // namespace tw::kernels

#else

namespace tw::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace tw::kernels

#endif

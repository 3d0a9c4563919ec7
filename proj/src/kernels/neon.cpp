#include "tw/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace tw::kernels {
namespace {

constexpr std::size_t kLane = 2;

void or_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

void and_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) vst1q_u64(dst + i, vandq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

void andnot_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  // vbicq(a, b) computes a & ~b.
  for (; i + kLane <= n; i += kLane) vst1q_u64(dst + i, vbicq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] &= ~src[i];
}

void xor_into(Word* dst, const Word* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) vst1q_u64(dst + i, veorq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  for (; i < n; ++i) dst[i] ^= src[i];
}

inline bool any_bits(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

bool intersects(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane)
    if (any_bits(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool is_subset(const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane)
    if (any_bits(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(const Word* a, std::size_t n) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
    total += vaddvq_u8(bytes);
  }
  for (; i < n; ++i) total += static_cast<std::size_t>(__builtin_popcountll(a[i]));
  return total;
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{Isa::Neon, or_into,  and_into, andnot_into,
                                 xor_into,  intersects, is_subset, popcount};
  return &table;
}

}  // namespace tw::kernels

#else

namespace tw::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace tw::kernels

#endif

#pragma once

// Word-level bitset kernels. Every kernel has a portable scalar reference and,
// where the target supports it, an AVX2 (x86-64) or NEON (aarch64) variant.
// The variant is chosen once at runtime; tests compare every variant against
// the scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace tw::kernels {

using Word = std::uint64_t;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  void (*or_into)(Word* dst, const Word* src, std::size_t n);
  void (*and_into)(Word* dst, const Word* src, std::size_t n);
  void (*andnot_into)(Word* dst, const Word* src, std::size_t n);
  void (*xor_into)(Word* dst, const Word* src, std::size_t n);
  bool (*intersects)(const Word* a, const Word* b, std::size_t n);
  bool (*is_subset)(const Word* a, const Word* b, std::size_t n);
  std::size_t (*popcount)(const Word* a, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the ISA was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// Best table for this CPU. Honors TW_FORCE_SCALAR=1 in the environment.
const KernelTable& active();

// All tables usable on this machine, scalar first.
std::span<const KernelTable* const> available();

inline void or_into(std::span<Word> dst, std::span<const Word> src) {
  active().or_into(dst.data(), src.data(), dst.size());
}
inline void and_into(std::span<Word> dst, std::span<const Word> src) {
  active().and_into(dst.data(), src.data(), dst.size());
}
inline void andnot_into(std::span<Word> dst, std::span<const Word> src) {
  active().andnot_into(dst.data(), src.data(), dst.size());
}
inline void xor_into(std::span<Word> dst, std::span<const Word> src) {
  active().xor_into(dst.data(), src.data(), dst.size());
}
inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  return active().intersects(a.data(), b.data(), a.size());
}
inline bool is_subset(std::span<const Word> a, std::span<const Word> b) {
  return active().is_subset(a.data(), b.data(), a.size());
}
inline std::size_t popcount(std::span<const Word> a) {
  return active().popcount(a.data(), a.size());
}

}  // namespace tw::kernels

#include <cstdlib>
#include <cstring>
#include <vector>

#include "tw/kernels.hpp"

namespace tw::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

std::span<const KernelTable* const> available() {
  static const std::vector<const KernelTable*> tables = [] {
    std::vector<const KernelTable*> out{&scalar_table()};
    if (const auto* t = avx2_table()) out.push_back(t);
    if (const auto* t = neon_table()) out.push_back(t);
    return out;
  }();
  return tables;
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("TW_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "1") == 0) return &scalar_table();
    return available().back();
  }();
  return *chosen;
}

}  // namespace tw::kernels

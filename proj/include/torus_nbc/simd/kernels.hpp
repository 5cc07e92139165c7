#pragma once

// Word-array kernels behind VertexSet. Each kernel has a portable scalar
// reference and, where the target supports it, an AVX2 variant. The active
// table is picked once at startup from CPUID and may be forced to the scalar
// reference with TORUS_NBC_SIMD=scalar.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace torus_nbc::simd {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

struct KernelTable {
  std::string_view name;

  // dst[i] |= src[i]
  void (*or_into)(Word* dst, const Word* src, std::size_t words);
  // dst[i] &= src[i]
  void (*and_into)(Word* dst, const Word* src, std::size_t words);
  // dst[i] &= ~src[i]
  void (*andnot_into)(Word* dst, const Word* src, std::size_t words);
  std::size_t (*popcount)(const Word* src, std::size_t words);
  bool (*equal)(const Word* a, const Word* b, std::size_t words);
  // Bit-level shift of (src & mask) OR-ed into dst. A positive `shift` moves
  // bit b to b + shift, a negative one to b - |shift|; bits leaving
  // [0, 64 * words) are dropped. dst must not alias src or mask.
  void (*masked_shift_or)(Word* dst, const Word* src, const Word* mask,
                          std::size_t words, std::ptrdiff_t shift);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

const KernelTable& active_kernels();

// Test hook; passing nullptr restores the CPUID-based choice.
void set_active_kernels(const KernelTable* table);

}  // namespace torus_nbc::simd

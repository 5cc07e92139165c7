#include "torus_nbc/simd/kernels.hpp"

#include <bit>

#include "kernels_internal.hpp"

namespace torus_nbc::simd {
namespace {

void or_into(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void and_into(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

void andnot_into(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= ~src[i];
}

std::size_t popcount(const Word* src, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(src[i]);
  return total;
}

bool equal(const Word* a, const Word* b, std::size_t words) {
  Word diff = 0;
  for (std::size_t i = 0; i < words; ++i) diff |= a[i] ^ b[i];
  return diff == 0;
}

void masked_shift_or(Word* dst, const Word* src, const Word* mask,
                     std::size_t words, std::ptrdiff_t shift) {
  if (shift >= 0) {
    const auto s = static_cast<std::size_t>(shift);
    const std::size_t q = s / kWordBits;
    const unsigned r = s % kWordBits;
    if (q >= words) return;
    for (std::size_t i = words; i-- > q;) {
      const Word lo = src[i - q] & mask[i - q];
      Word v = lo << r;
      if (r != 0 && i > q) {
        const Word carry = src[i - q - 1] & mask[i - q - 1];
        v |= carry >> (kWordBits - r);
      }
      dst[i] |= v;
    }
  } else {
    const auto s = static_cast<std::size_t>(-shift);
    const std::size_t q = s / kWordBits;
    const unsigned r = s % kWordBits;
    if (q >= words) return;
    for (std::size_t i = 0; i + q < words; ++i) {
      const Word hi = src[i + q] & mask[i + q];
      Word v = hi >> r;
      if (r != 0 && i + q + 1 < words) {
        const Word carry = src[i + q + 1] & mask[i + q + 1];
        v |= carry << (kWordBits - r);
      }
      dst[i] |= v;
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar", &or_into, &and_into, &andnot_into,
      &popcount, &equal, &masked_shift_or,
  };
  return table;
}

}  // namespace torus_nbc::simd

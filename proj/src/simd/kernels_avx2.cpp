#include <immintrin.h>

#include <bit>

#include "kernels_internal.hpp"

namespace torus_nbc::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load(const Word* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(Word* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void or_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

void and_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    store(dst + i, _mm256_and_si256(load(dst + i), load(src + i)));
  }
  for (; i < words; ++i) dst[i] &= src[i];
}

void andnot_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    // _mm256_andnot_si256(a, b) computes ~a & b.
    store(dst + i, _mm256_andnot_si256(load(src + i), load(dst + i)));
  }
  for (; i < words; ++i) dst[i] &= ~src[i];
}

// Nibble-table popcount (Mula): pshufb looks up the bit count of each nibble,
// psadbw folds the byte counts into four 64-bit lane sums.
std::size_t popcount(const Word* src, std::size_t words) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                         3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                         2, 3, 2, 3, 3, 4);
  const __m256i low_nibble = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    const __m256i v = load(src + i);
    const __m256i lo = _mm256_and_si256(v, low_nibble);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_nibble);
    const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo),
                                           _mm256_shuffle_epi8(table, hi));
    acc = _mm256_add_epi64(acc,
                           _mm256_sad_epu8(counts, _mm256_setzero_si256()));
  }
  alignas(32) Word lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < words; ++i) total += std::popcount(src[i]);
  return total;
}

bool equal(const Word* a, const Word* b, std::size_t words) {
  __m256i diff = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= words; i += kLanes) {
    diff = _mm256_or_si256(diff, _mm256_xor_si256(load(a + i), load(b + i)));
  }
  Word tail = 0;
  for (; i < words; ++i) tail |= a[i] ^ b[i];
  return _mm256_testz_si256(diff, diff) != 0 && tail == 0;
}

// Variable shift counts >= 64 zero the lane in AVX2, so the carry term for
// r == 0 needs no special case in the vector body.
void masked_shift_or(Word* dst, const Word* src, const Word* mask,
                     std::size_t words, std::ptrdiff_t shift) {
  if (shift >= 0) {
    const auto s = static_cast<std::size_t>(shift);
    const std::size_t q = s / kWordBits;
    const unsigned r = s % kWordBits;
    if (q >= words) return;
    const __m128i left = _mm_cvtsi32_si128(static_cast<int>(r));
    const __m128i right = _mm_cvtsi32_si128(static_cast<int>(kWordBits - r));

    // Word q has no lower neighbour to carry from.
    dst[q] |= (src[0] & mask[0]) << r;
    std::size_t i = q + 1;
    for (; i + kLanes <= words; i += kLanes) {
      const __m256i cur =
          _mm256_and_si256(load(src + i - q), load(mask + i - q));
      const __m256i prev =
          _mm256_and_si256(load(src + i - q - 1), load(mask + i - q - 1));
      const __m256i v = _mm256_or_si256(_mm256_sll_epi64(cur, left),
                                        _mm256_srl_epi64(prev, right));
      store(dst + i, _mm256_or_si256(load(dst + i), v));
    }
    for (; i < words; ++i) {
      Word v = (src[i - q] & mask[i - q]) << r;
      if (r != 0) v |= (src[i - q - 1] & mask[i - q - 1]) >> (kWordBits - r);
      dst[i] |= v;
    }
  } else {
    const auto s = static_cast<std::size_t>(-shift);
    const std::size_t q = s / kWordBits;
    const unsigned r = s % kWordBits;
    if (q >= words) return;
    const __m128i right = _mm_cvtsi32_si128(static_cast<int>(r));
    const __m128i left = _mm_cvtsi32_si128(static_cast<int>(kWordBits - r));

    const std::size_t last = words - q - 1;  // no upper neighbour to carry from
    std::size_t i = 0;
    for (; i + kLanes <= last; i += kLanes) {
      const __m256i cur =
          _mm256_and_si256(load(src + i + q), load(mask + i + q));
      const __m256i next =
          _mm256_and_si256(load(src + i + q + 1), load(mask + i + q + 1));
      const __m256i v = _mm256_or_si256(_mm256_srl_epi64(cur, right),
                                        _mm256_sll_epi64(next, left));
      store(dst + i, _mm256_or_si256(load(dst + i), v));
    }
    for (; i < last; ++i) {
      Word v = (src[i + q] & mask[i + q]) >> r;
      if (r != 0) v |= (src[i + q + 1] & mask[i + q + 1]) << (kWordBits - r);
      dst[i] |= v;
    }
    dst[last] |= (src[words - 1] & mask[words - 1]) >> r;
  }
}

}  // namespace

namespace detail {

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2", &or_into, &and_into, &andnot_into,
      &popcount, &equal, &masked_shift_or,
  };
  return table;
}

}  // namespace detail
}  // namespace torus_nbc::simd

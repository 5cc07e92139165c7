#include <cstdint>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "torus_nbc/simd/kernels.hpp"

namespace torus_nbc::simd {
namespace {

using Words = std::vector<Word>;

// Bit-at-a-time reference for masked_shift_or, independent of both kernels.
Words NaiveMaskedShiftOr(const Words& dst, const Words& src, const Words& mask,
                         std::ptrdiff_t shift) {
  Words out = dst;
  const auto bits = static_cast<std::ptrdiff_t>(src.size() * kWordBits);
  for (std::ptrdiff_t b = 0; b < bits; ++b) {
    const bool set = (src[b / 64] >> (b % 64)) & (mask[b / 64] >> (b % 64)) & 1u;
    const std::ptrdiff_t to = b + shift;
    if (set && to >= 0 && to < bits) out[to / 64] |= Word{1} << (to % 64);
  }
  return out;
}

Words RandomWords(std::mt19937_64& rng, std::size_t n, int density) {
  Words w(n);
  for (auto& x : w) {
    x = rng();
    for (int i = 0; i < density; ++i) x &= rng();  // sparser as density grows
  }
  return w;
}

std::vector<const KernelTable*> Tables() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* avx2 = avx2_kernels()) out.push_back(avx2);
  return out;
}

TEST(KernelsTest, ActiveTableIsOneOfTheKnownTables) {
  const KernelTable& active = active_kernels();
  EXPECT_TRUE(&active == &scalar_kernels() || &active == avx2_kernels());
}

TEST(KernelsTest, MaskedShiftOrMatchesBitwiseReference) {
  std::mt19937_64 rng(1234);
  for (const KernelTable* k : Tables()) {
    SCOPED_TRACE(std::string(k->name));
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 13u, 17u}) {
      const auto bits = static_cast<std::ptrdiff_t>(n * kWordBits);
      for (int trial = 0; trial < 40; ++trial) {
        const Words src = RandomWords(rng, n, trial % 3);
        const Words mask = RandomWords(rng, n, 0);
        const Words dst = RandomWords(rng, n, 2);
        std::ptrdiff_t shift =
            static_cast<std::ptrdiff_t>(rng() % (2 * bits + 3)) - bits - 1;
        if (trial < 6) shift = std::vector<std::ptrdiff_t>{0, 1, -1, 64, -64, 63}[trial];
        Words got = dst;
        k->masked_shift_or(got.data(), src.data(), mask.data(), n, shift);
        ASSERT_EQ(got, NaiveMaskedShiftOr(dst, src, mask, shift))
            << "n=" << n << " shift=" << shift;
      }
    }
  }
}

TEST(KernelsTest, ElementwiseKernelsAgreeAcrossVariants) {
  std::mt19937_64 rng(99);
  const KernelTable& ref = scalar_kernels();
  for (const KernelTable* k : Tables()) {
    SCOPED_TRACE(std::string(k->name));
    for (std::size_t n = 0; n <= 21; ++n) {
      const Words a = RandomWords(rng, n, 0);
      const Words b = RandomWords(rng, n, 1);

      Words x = a, y = a;
      k->or_into(x.data(), b.data(), n);
      ref.or_into(y.data(), b.data(), n);
      EXPECT_EQ(x, y);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(y[i], a[i] | b[i]);

      x = a, y = a;
      k->and_into(x.data(), b.data(), n);
      ref.and_into(y.data(), b.data(), n);
      EXPECT_EQ(x, y);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(y[i], a[i] & b[i]);

      x = a, y = a;
      k->andnot_into(x.data(), b.data(), n);
      ref.andnot_into(y.data(), b.data(), n);
      EXPECT_EQ(x, y);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(y[i], a[i] & ~b[i]);

      std::size_t naive = 0;
      for (Word w : a) {
        for (int bit = 0; bit < 64; ++bit) naive += (w >> bit) & 1u;
      }
      EXPECT_EQ(k->popcount(a.data(), n), naive);

      EXPECT_TRUE(k->equal(a.data(), a.data(), n));
      if (n > 0) {
        Words c = a;
        c[rng() % n] ^= Word{1} << (rng() % 64);
        EXPECT_FALSE(k->equal(a.data(), c.data(), n));
      }
    }
  }
}

TEST(KernelsTest, OverrideSwitchesActiveTable) {
  set_active_kernels(&scalar_kernels());
  EXPECT_EQ(active_kernels().name, "scalar");
  set_active_kernels(nullptr);
  EXPECT_NE(active_kernels().name, "");
}

}  // namespace
}  // namespace torus_nbc::simd

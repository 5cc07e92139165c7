#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "torus_nbc/simd/kernels.hpp"

namespace torus_nbc {

// A mesh vertex by its flat mixed-radix index (u1 is the most significant
// digit). Coordinates are recovered through Mesh::decode.
struct Vertex {
  std::size_t flat = 0;

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Fixed-universe bitset over vertex indices [0, universe). Bits past the
// universe in the last word are kept clear.
class VertexSet {
 public:
  using Word = simd::Word;

  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  static VertexSet full(std::size_t universe);
  static VertexSet of(std::size_t universe, std::span<const Vertex> vertices);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool contains(Vertex v) const noexcept {
    return v.flat < universe_ &&
           (words_[v.flat / simd::kWordBits] >> (v.flat % simd::kWordBits)) & 1u;
  }
  void insert(Vertex v) noexcept {
    words_[v.flat / simd::kWordBits] |= Word{1} << (v.flat % simd::kWordBits);
  }
  void erase(Vertex v) noexcept {
    words_[v.flat / simd::kWordBits] &= ~(Word{1} << (v.flat % simd::kWordBits));
  }
  void clear() noexcept;

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  // Lowest member; universe() when empty.
  std::size_t first() const noexcept;

  VertexSet& operator|=(const VertexSet& other) noexcept;
  VertexSet& operator&=(const VertexSet& other) noexcept;
  // this &= ~other
  VertexSet& subtract(const VertexSet& other) noexcept;
  // Complement within the universe.
  VertexSet complement() const;

  bool operator==(const VertexSet& other) const noexcept;

  std::vector<Vertex> to_vector() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        fn(Vertex{w * simd::kWordBits + static_cast<std::size_t>(b)});
        bits &= bits - 1;
      }
    }
  }

  std::span<Word> words() noexcept { return words_; }
  std::span<const Word> words() const noexcept { return words_; }

 private:
  void trim() noexcept;

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

}  // namespace torus_nbc

#include "torus_nbc/vertex_set.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace torus_nbc {

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe),
      words_((universe + simd::kWordBits - 1) / simd::kWordBits, 0) {}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
  s.trim();
  return s;
}

VertexSet VertexSet::of(std::size_t universe, std::span<const Vertex> vertices) {
  VertexSet s(universe);
  for (Vertex v : vertices) {
    assert(v.flat < universe);
    s.insert(v);
  }
  return s;
}

void VertexSet::clear() noexcept {
  std::fill(words_.begin(), words_.end(), 0);
}

std::size_t VertexSet::count() const noexcept {
  return simd::active_kernels().popcount(words_.data(), words_.size());
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(),
                     [](Word w) { return w == 0; });
}

std::size_t VertexSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return w * simd::kWordBits +
             static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
  }
  return universe_;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) noexcept {
  assert(universe_ == other.universe_);
  simd::active_kernels().or_into(words_.data(), other.words_.data(),
                                 words_.size());
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) noexcept {
  assert(universe_ == other.universe_);
  simd::active_kernels().and_into(words_.data(), other.words_.data(),
                                  words_.size());
  return *this;
}

VertexSet& VertexSet::subtract(const VertexSet& other) noexcept {
  assert(universe_ == other.universe_);
  simd::active_kernels().andnot_into(words_.data(), other.words_.data(),
                                     words_.size());
  return *this;
}

VertexSet VertexSet::complement() const {
  VertexSet out = full(universe_);
  out.subtract(*this);
  return out;
}

bool VertexSet::operator==(const VertexSet& other) const noexcept {
  return universe_ == other.universe_ &&
         simd::active_kernels().equal(words_.data(), other.words_.data(),
                                      words_.size());
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

void VertexSet::trim() noexcept {
  const std::size_t tail = universe_ % simd::kWordBits;
  if (tail != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << tail) - 1;
  }
}

}  // namespace torus_nbc

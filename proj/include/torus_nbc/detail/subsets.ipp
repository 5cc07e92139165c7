#pragma once

#include <vector>

#include "torus_nbc/vertex_set.hpp"

namespace torus_nbc {

template <typename Fn>
void for_each_subset(std::size_t universe, std::size_t l, bool pin_zero, Fn&& fn) {
  std::vector<Vertex> subset;
  if (l == 0) {
    fn(subset);
    return;
  }
  if (l > universe) return;
  std::vector<std::size_t> idx(l);
  const std::size_t start = pin_zero ? 1 : 0;
  if (pin_zero) idx[0] = 0;
  for (std::size_t i = start; i < l; ++i) idx[i] = i;
  subset.resize(l);
  while (true) {
    for (std::size_t i = 0; i < l; ++i) subset[i] = Vertex{idx[i]};
    if (!fn(static_cast<const std::vector<Vertex>&>(subset))) return;
    // Advance the rightmost index that still has room.
    std::size_t i = l;
    while (i > start && idx[i - 1] == universe - l + i - 1) --i;
    if (i == start) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < l; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace torus_nbc

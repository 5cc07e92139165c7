#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torus_nbc/vertex_set.hpp"

namespace torus_nbc {

using Coords = std::vector<std::size_t>;

class PartitionView;

// The undirected toroidal mesh C(d1, ..., dn): vertices are mixed-radix
// tuples, two vertices are adjacent when they differ by +-1 (mod dj) in
// exactly one coordinate j. Immutable once built.
//
// Axes are 1-based on every public entry point taking an `axis`.
class Mesh {
 public:
  // Throws Error{kDimensionTooSmall} for an empty sequence or any entry < 2,
  // Error{kOverflow} when the vertex count does not fit std::size_t.
  explicit Mesh(std::vector<std::size_t> dims);

  std::size_t dimension() const noexcept { return dims_.size(); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t axis) const;  // d_axis
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  // Every d_i >= 3: the regime in which the degree is exactly 2n.
  bool all_dims_ge_3() const noexcept { return all_dims_ge_3_; }
  // Sum over axes of 2 (d >= 3) or 1 (d == 2).
  std::size_t degree() const noexcept { return degree_; }
  // Flat-index step of one unit along `axis`.
  std::size_t stride(std::size_t axis) const;

  // "3x4x5"
  std::string literal() const;

  bool contains(Vertex v) const noexcept { return v.flat < vertex_count_; }
  // Throws Error{kInvalidVertex} on arity or range mismatch.
  Vertex encode(std::span<const std::size_t> coords) const;
  Coords decode(Vertex v) const;
  std::size_t coordinate(Vertex v, std::size_t axis) const;

  // Neighbours in ascending flat order, without duplicates. A d = 2 axis
  // contributes one neighbour since +1 and -1 coincide.
  std::vector<Vertex> neighbors(Vertex v) const;
  bool adjacent(Vertex a, Vertex b) const;

  template <typename Fn>
  void for_each_neighbor(Vertex v, Fn&& fn) const {
    for (std::size_t j = 0; j < dims_.size(); ++j) {
      const std::size_t d = dims_[j];
      const std::size_t s = strides_[j];
      const std::size_t u = (v.flat / s) % d;
      const std::size_t up = (u + 1 == d) ? v.flat - u * s : v.flat + s;
      fn(Vertex{up});
      if (d > 2) {
        const std::size_t down = (u == 0) ? v.flat + (d - 1) * s : v.flat - s;
        fn(Vertex{down});
      }
    }
  }

  // The unique neighbour of v in layer `layer` of the partition along `axis`.
  // Throws Error{kNotAdjacentLayer} unless |layer - v_axis| == 1 (mod d_axis),
  // Error{kAxisOutOfRange} for a bad axis.
  Vertex outer_neighbor(Vertex v, std::size_t axis, std::size_t layer) const;

  PartitionView partition(std::size_t axis) const;

  // "(1,3,0)"
  std::string format_vertex(Vertex v) const;
  // Digit string "130" when every d_i <= 10, else format_vertex.
  std::string compact_vertex(Vertex v) const;

  friend bool operator==(const Mesh& a, const Mesh& b) {
    return a.dims_ == b.dims_;
  }

 private:
  std::size_t axis_index(std::size_t axis) const;

  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t vertex_count_ = 0;
  std::size_t degree_ = 0;
  bool all_dims_ge_3_ = false;
};

Mesh new_mesh(std::span<const std::size_t> dims);

// Parses the `3x4x5` literal: decimal digits separated by a lowercase 'x'.
// Throws ParseError carrying the offending character offset; a dimension
// below 2 is reported at the start of that number.
Mesh parse_mesh(std::string_view literal);

// Parses "1,3,0" into coordinates (no range checking).
Coords parse_coords(std::string_view text);

// Layers C[0..d_c-1] of the mesh cut along one axis.
class PartitionView {
 public:
  PartitionView(const Mesh& mesh, std::size_t axis);

  std::size_t axis() const noexcept { return axis_; }
  std::size_t layer_count() const noexcept { return layer_count_; }
  std::size_t layer_size() const noexcept;
  std::size_t layer_of(Vertex v) const { return mesh_.coordinate(v, axis_); }
  bool layers_adjacent(std::size_t i, std::size_t j) const noexcept;

  std::vector<Vertex> layer(std::size_t i) const;
  VertexSet layer_set(std::size_t i) const;

  // The mesh with this axis removed; nullopt for a 1-dimensional mesh whose
  // layers are single vertices.
  std::optional<Mesh> layer_mesh() const;
  // Position of v inside layer_mesh() (coordinate `axis` dropped).
  Vertex project(Vertex v) const;

 private:
  Mesh mesh_;
  std::size_t axis_;
  std::size_t layer_count_;
};

// Precomputed masks turning "closed neighbourhood of a vertex set" into
// 2n masked word shifts, one pair per axis direction.
class NeighborhoodOperator {
 public:
  explicit NeighborhoodOperator(const Mesh& mesh);

  std::size_t universe() const noexcept { return universe_; }

  // dst = src U N(src). dst is overwritten; must not alias src.
  void dilate(const VertexSet& src, VertexSet& dst) const;
  // dst |= N(src) (open neighbourhood, OR-accumulated).
  void accumulate_neighbors(const VertexSet& src, VertexSet& dst) const;

 private:
  struct Shift {
    VertexSet mask;
    std::ptrdiff_t offset;
  };

  std::size_t universe_;
  std::vector<Shift> shifts_;
};

}  // namespace torus_nbc

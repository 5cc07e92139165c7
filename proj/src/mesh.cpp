#include "torus_nbc/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "torus_nbc/error.hpp"

namespace torus_nbc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidVertex: return "InvalidVertex";
    case ErrorCode::kNotAdjacentLayer: return "NotAdjacentLayer";
    case ErrorCode::kAxisOutOfRange: return "AxisOutOfRange";
    case ErrorCode::kVertexDead: return "VertexDead";
    case ErrorCode::kEmptyTargetSet: return "EmptyTargetSet";
    case ErrorCode::kSameVertex: return "SameVertex";
    case ErrorCode::kUnsupportedMesh: return "UnsupportedMesh";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kLayersNotAdjacent: return "LayersNotAdjacent";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Mesh::Mesh(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw Error(ErrorCode::kDimensionTooSmall, "mesh needs at least one axis");
  }
  std::size_t product = 1;
  all_dims_ge_3_ = true;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const std::size_t d = dims_[i];
    if (d < 2) {
      throw Error(ErrorCode::kDimensionTooSmall,
                  "d" + std::to_string(i + 1) + " = " + std::to_string(d) +
                      " (need >= 2)");
    }
    if (product > std::numeric_limits<std::size_t>::max() / d) {
      throw Error(ErrorCode::kOverflow,
                  "vertex count of " + literal() + " overflows the index word");
    }
    product *= d;
    all_dims_ge_3_ = all_dims_ge_3_ && d >= 3;
    degree_ += d >= 3 ? 2 : 1;
  }
  vertex_count_ = product;
  strides_.assign(dims_.size(), 1);
  for (std::size_t i = dims_.size() - 1; i-- > 0;) {
    strides_[i] = strides_[i + 1] * dims_[i + 1];
  }
}

std::size_t Mesh::axis_index(std::size_t axis) const {
  if (axis < 1 || axis > dims_.size()) {
    throw Error(ErrorCode::kAxisOutOfRange,
                "axis " + std::to_string(axis) + " not in [1, " +
                    std::to_string(dims_.size()) + "]");
  }
  return axis - 1;
}

std::size_t Mesh::dim(std::size_t axis) const { return dims_[axis_index(axis)]; }

std::size_t Mesh::stride(std::size_t axis) const {
  return strides_[axis_index(axis)];
}

std::string Mesh::literal() const {
  std::string out;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i != 0) out += 'x';
    out += std::to_string(dims_[i]);
  }
  return out;
}

Vertex Mesh::encode(std::span<const std::size_t> coords) const {
  if (coords.size() != dims_.size()) {
    throw Error(ErrorCode::kInvalidVertex,
                "expected " + std::to_string(dims_.size()) + " coordinates, got " +
                    std::to_string(coords.size()));
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (coords[i] >= dims_[i]) {
      throw Error(ErrorCode::kInvalidVertex,
                  "coordinate " + std::to_string(i + 1) + " = " +
                      std::to_string(coords[i]) + " out of range for d = " +
                      std::to_string(dims_[i]));
    }
    flat += coords[i] * strides_[i];
  }
  return Vertex{flat};
}

Coords Mesh::decode(Vertex v) const {
  Coords out(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    out[i] = (v.flat / strides_[i]) % dims_[i];
  }
  return out;
}

std::size_t Mesh::coordinate(Vertex v, std::size_t axis) const {
  const std::size_t j = axis_index(axis);
  return (v.flat / strides_[j]) % dims_[j];
}

std::vector<Vertex> Mesh::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(degree_);
  for_each_neighbor(v, [&](Vertex w) { out.push_back(w); });
  std::sort(out.begin(), out.end());
  return out;
}

bool Mesh::adjacent(Vertex a, Vertex b) const {
  std::size_t differing = 0;
  bool unit_step = false;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const std::size_t ua = (a.flat / strides_[i]) % dims_[i];
    const std::size_t ub = (b.flat / strides_[i]) % dims_[i];
    if (ua == ub) continue;
    ++differing;
    const std::size_t diff = ua > ub ? ua - ub : ub - ua;
    unit_step = diff == 1 || diff == dims_[i] - 1;
  }
  return differing == 1 && unit_step;
}

Vertex Mesh::outer_neighbor(Vertex v, std::size_t axis, std::size_t layer) const {
  const std::size_t j = axis_index(axis);
  const std::size_t d = dims_[j];
  const std::size_t u = (v.flat / strides_[j]) % d;
  const bool adjacent_layer =
      layer < d && layer != u && (layer == (u + 1) % d || layer == (u + d - 1) % d);
  if (!adjacent_layer) {
    throw Error(ErrorCode::kNotAdjacentLayer,
                "layer " + std::to_string(layer) + " is not adjacent to layer " +
                    std::to_string(u) + " along axis " + std::to_string(axis));
  }
  return Vertex{v.flat - u * strides_[j] + layer * strides_[j]};
}

PartitionView Mesh::partition(std::size_t axis) const {
  return PartitionView(*this, axis);
}

std::string Mesh::format_vertex(Vertex v) const {
  std::string out = "(";
  const Coords c = decode(v);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(c[i]);
  }
  out += ')';
  return out;
}

std::string Mesh::compact_vertex(Vertex v) const {
  if (std::any_of(dims_.begin(), dims_.end(),
                  [](std::size_t d) { return d > 10; })) {
    return format_vertex(v);
  }
  std::string out;
  for (std::size_t c : decode(v)) out += static_cast<char>('0' + c);
  return out;
}

Mesh new_mesh(std::span<const std::size_t> dims) {
  return Mesh(std::vector<std::size_t>(dims.begin(), dims.end()));
}

Mesh parse_mesh(std::string_view literal) {
  if (literal.empty()) throw ParseError(0, "empty mesh literal");
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = pos;
    while (pos < literal.size() && literal[pos] >= '0' && literal[pos] <= '9') {
      ++pos;
    }
    if (pos == start) {
      throw ParseError(pos, pos < literal.size()
                                ? "expected a digit, found '" +
                                      std::string(1, literal[pos]) + "'"
                                : "expected a digit at end of literal");
    }
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(literal.data() + start, literal.data() + pos, value);
    if (ec != std::errc{}) {
      throw ParseError(start, "dimension does not fit the index word");
    }
    if (value < 2) {
      throw ParseError(start, "dimension " + std::to_string(value) +
                                  " is below the minimum of 2");
    }
    dims.push_back(value);
    if (pos == literal.size()) break;
    if (literal[pos] != 'x') {
      throw ParseError(pos, "expected 'x', found '" +
                                std::string(1, literal[pos]) + "'");
    }
    ++pos;
  }
  try {
    return Mesh(std::move(dims));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

Coords parse_coords(std::string_view text) {
  Coords out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    std::size_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data() + start, text.data() + pos, value);
    if (pos == start || ec != std::errc{}) {
      throw ParseError(start, "expected a coordinate in '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw ParseError(pos, "expected ',' in '" + std::string(text) + "'");
    }
    ++pos;
  }
  return out;
}

PartitionView::PartitionView(const Mesh& mesh, std::size_t axis)
    : mesh_(mesh), axis_(axis), layer_count_(mesh.dim(axis)) {}

std::size_t PartitionView::layer_size() const noexcept {
  return mesh_.vertex_count() / layer_count_;
}

bool PartitionView::layers_adjacent(std::size_t i, std::size_t j) const noexcept {
  if (i >= layer_count_ || j >= layer_count_ || i == j) return false;
  return (i + 1) % layer_count_ == j || (j + 1) % layer_count_ == i;
}

std::vector<Vertex> PartitionView::layer(std::size_t i) const {
  std::vector<Vertex> out;
  out.reserve(layer_size());
  const std::size_t s = mesh_.stride(axis_);
  const std::size_t d = layer_count_;
  // Vertices with coordinate i along the axis: blocks of `s` consecutive
  // indices, one block every d * s.
  for (std::size_t base = i * s; base < mesh_.vertex_count(); base += d * s) {
    for (std::size_t k = 0; k < s; ++k) out.push_back(Vertex{base + k});
  }
  return out;
}

VertexSet PartitionView::layer_set(std::size_t i) const {
  const std::vector<Vertex> vs = layer(i);
  return VertexSet::of(mesh_.vertex_count(), vs);
}

std::optional<Mesh> PartitionView::layer_mesh() const {
  if (mesh_.dimension() < 2) return std::nullopt;
  std::vector<std::size_t> rest;
  for (std::size_t a = 1; a <= mesh_.dimension(); ++a) {
    if (a != axis_) rest.push_back(mesh_.dim(a));
  }
  return Mesh(std::move(rest));
}

Vertex PartitionView::project(Vertex v) const {
  const std::size_t s = mesh_.stride(axis_);
  const std::size_t high = v.flat / (s * layer_count_);
  const std::size_t low = v.flat % s;
  return Vertex{high * s + low};
}

NeighborhoodOperator::NeighborhoodOperator(const Mesh& mesh)
    : universe_(mesh.vertex_count()) {
  for (std::size_t axis = 1; axis <= mesh.dimension(); ++axis) {
    const std::size_t d = mesh.dim(axis);
    const auto s = static_cast<std::ptrdiff_t>(mesh.stride(axis));
    const auto wrap = static_cast<std::ptrdiff_t>(d - 1) * s;
    VertexSet interior_up(universe_);    // u < d-1
    VertexSet last(universe_);           // u == d-1
    VertexSet interior_down(universe_);  // u > 0
    VertexSet first(universe_);          // u == 0
    for (std::size_t f = 0; f < universe_; ++f) {
      const std::size_t u = mesh.coordinate(Vertex{f}, axis);
      (u + 1 < d ? interior_up : last).insert(Vertex{f});
      (u > 0 ? interior_down : first).insert(Vertex{f});
    }
    shifts_.push_back({std::move(interior_up), s});
    shifts_.push_back({std::move(last), -wrap});
    if (d > 2) {
      shifts_.push_back({std::move(interior_down), -s});
      shifts_.push_back({std::move(first), wrap});
    }
  }
}

void NeighborhoodOperator::accumulate_neighbors(const VertexSet& src,
                                                VertexSet& dst) const {
  const simd::KernelTable& k = simd::active_kernels();
  const std::size_t words = src.word_count();
  for (const Shift& sh : shifts_) {
    k.masked_shift_or(dst.words().data(), src.words().data(),
                      sh.mask.words().data(), words, sh.offset);
  }
}

void NeighborhoodOperator::dilate(const VertexSet& src, VertexSet& dst) const {
  dst = src;
  accumulate_neighbors(src, dst);
}

}  // namespace torus_nbc

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace homembed {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on the dense vertex range 0..vertex_count-1.
///
/// Immutable after construction. Edges are normalized to (u, v) with u < v
/// and kept sorted, so two graphs compare equal iff they have the same
/// labelled edge set.
class Graph {
public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// endpoints outside the vertex range.
  explicit Graph(std::size_t vertex_count, std::vector<Edge> edges = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertex_count_ == 0; }

  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Sorted neighbor list of `v`.
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Degrees sorted in non-increasing order.
  std::vector<std::size_t> degree_sequence() const;

  /// Number of connected components; isolated vertices count as components.
  std::size_t component_count() const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

private:
  static constexpr std::size_t kMatrixLimit = 4096;

  std::size_t vertex_count_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<Vertex> adjacency_;
  // Row-major bit matrix, only populated for vertex_count <= kMatrixLimit.
  std::size_t row_words_ = 0;
  std::vector<std::uint64_t> matrix_;
};

enum class Family { cycle, path, complete, edgeless };

/// Parses "cycle", "path", "complete" or "edgeless".
Family parse_family(std::string_view name);

/// Named graph on n consecutive vertices. Throws std::domain_error for
/// n < 1, or a cycle with n < 3.
Graph generate(Family family, std::size_t n);

/// Vertices of `h` are shifted by v(g).
Graph disjoint_union(const Graph& g, const Graph& h);

/// Circular skip link graph: cycle 0..n-1 plus chords {i, i+skip mod n}.
/// Throws std::domain_error unless n >= 5 and 2 <= skip <= n-2. The graph
/// is 4-regular, except for 2*skip == n where the chords coincide in pairs
/// and it is 3-regular.
Graph generate_csl(std::size_t n, std::size_t skip);

/// Graph with vertex v renamed to permutation[v].
Graph relabel(const Graph& g, std::span<const Vertex> permutation);

/// Subgraph induced by `kept` (ascending), relabelled densely in that order.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> kept);

}  // namespace homembed

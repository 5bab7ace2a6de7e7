#include "homembed/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace homembed {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u == v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (u >= vertex_count_ || v >= vertex_count_) {
      throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                  "} outside vertex range " + std::to_string(vertex_count_));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw std::invalid_argument("parallel edge {" + std::to_string(dup->first) + "," +
                                std::to_string(dup->second) + "}");
  }

  std::vector<std::size_t> degree(vertex_count_, 0);
  for (const auto& [u, v] : edges_) {
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  max_degree_ = vertex_count_ == 0 ? 0 : *std::max_element(degree.begin(), degree.end());

  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
  }

  if (vertex_count_ <= kMatrixLimit) {
    row_words_ = (vertex_count_ + 63) / 64;
    matrix_.assign(row_words_ * vertex_count_, 0);
    for (const auto& [u, v] : edges_) {
      matrix_[u * row_words_ + v / 64] |= std::uint64_t{1} << (v % 64);
      matrix_[v * row_words_ + u / 64] |= std::uint64_t{1} << (u % 64);
    }
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
  if (u >= vertex_count_ || v >= vertex_count_) return false;
  if (!matrix_.empty()) {
    return (matrix_[u * row_words_ + v / 64] >> (v % 64)) & 1U;
  }
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> seq(vertex_count_);
  for (std::size_t v = 0; v < vertex_count_; ++v) seq[v] = degree(static_cast<Vertex>(v));
  std::sort(seq.begin(), seq.end(), std::greater<>());
  return seq;
}

std::size_t Graph::component_count() const {
  std::vector<std::size_t> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertex_count_;
  for (const auto& [u, v] : edges_) {
    auto a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

Family parse_family(std::string_view name) {
  if (name == "cycle") return Family::cycle;
  if (name == "path") return Family::path;
  if (name == "complete") return Family::complete;
  if (name == "edgeless") return Family::edgeless;
  throw std::invalid_argument("unknown graph family '" + std::string(name) + "'");
}

Graph generate(Family family, std::size_t n) {
  if (n < 1) throw std::domain_error("graph family requires n >= 1");
  std::vector<Edge> edges;
  switch (family) {
    case Family::cycle:
      if (n < 3) throw std::domain_error("cycle requires n >= 3");
      for (std::size_t i = 0; i < n; ++i) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
      }
      break;
    case Family::path:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
      }
      break;
    case Family::complete:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        }
      }
      break;
    case Family::edgeless:
      break;
  }
  return Graph(n, std::move(edges));
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const auto shift = static_cast<Vertex>(g.vertex_count());
  for (const auto& [u, v] : h.edges()) edges.emplace_back(u + shift, v + shift);
  return Graph(g.vertex_count() + h.vertex_count(), std::move(edges));
}

Graph generate_csl(std::size_t n, std::size_t skip) {
  if (n < 5) throw std::domain_error("circular skip link graph requires n >= 5");
  if (skip < 2 || skip > n - 2) {
    throw std::domain_error("skip must lie in [2, n-2], got " + std::to_string(skip));
  }
  std::vector<Edge> edges;
  for (std::size_t step : {std::size_t{1}, skip}) {
    for (std::size_t i = 0; i < n; ++i) {
      edges.push_back(std::minmax(static_cast<Vertex>(i), static_cast<Vertex>((i + step) % n)));
    }
  }
  // With 2*skip == n every chord is generated twice.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges));
}

Graph relabel(const Graph& g, std::span<const Vertex> permutation) {
  if (permutation.size() != g.vertex_count()) {
    throw std::invalid_argument("permutation size does not match vertex count");
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(permutation[u], permutation[v]);
  return Graph(g.vertex_count(), std::move(edges));
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> kept) {
  std::vector<Vertex> index(g.vertex_count(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (index[u] != static_cast<Vertex>(-1) && index[v] != static_cast<Vertex>(-1)) {
      edges.emplace_back(index[u], index[v]);
    }
  }
  return Graph(kept.size(), std::move(edges));
}

}  // namespace homembed

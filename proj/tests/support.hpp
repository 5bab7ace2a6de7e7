#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "homembed/decomposition.hpp"
#include "homembed/graph.hpp"
#include "homembed/random.hpp"

namespace testing_support {

using namespace homembed;

/// Erdos-Renyi graph: each pair is an edge independently with probability p.
inline Graph random_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

inline std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
  return perm;
}

/// Tree decomposition from eliminating vertices in `order`: the bag of v is
/// v plus its later neighbours in the fill-in graph, linked to the bag of
/// the earliest-eliminated of those neighbours. Components are chained.
inline TreeDecomposition elimination_decomposition(const Graph& g, const std::vector<Vertex>& order) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
  std::vector<std::set<Vertex>> fill(n);
  for (const auto& [u, v] : g.edges()) {
    fill[u].insert(v);
    fill[v].insert(u);
  }
  TreeDecomposition td;
  td.bags.resize(n);
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = order[i];
    std::vector<Vertex> later;
    for (Vertex u : fill[v]) {
      if (rank[u] > i) later.push_back(u);
    }
    for (Vertex a : later) {
      for (Vertex b : later) {
        if (a != b) fill[a].insert(b);
      }
    }
    Bag bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[i] = bag;
    if (later.empty()) {
      roots.push_back(i);
    } else {
      const Vertex next = *std::min_element(later.begin(), later.end(),
                                            [&](Vertex a, Vertex b) { return rank[a] < rank[b]; });
      td.tree_edges.emplace_back(i, rank[next]);
    }
  }
  for (std::size_t r = 1; r < roots.size(); ++r) td.tree_edges.emplace_back(roots[r - 1], roots[r]);
  return td;
}

inline TreeDecomposition random_elimination_decomposition(const Graph& g, Rng& rng) {
  return elimination_decomposition(g, random_permutation(g.vertex_count(), rng));
}

}  // namespace testing_support

#include "homembed/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace homembed {
namespace {

class Matcher {
public:
  Matcher(const Graph& g, const Graph& h) : g_(g), h_(h), image_(g.vertex_count()), used_(h.vertex_count()) {
    order_.resize(g.vertex_count());
    std::iota(order_.begin(), order_.end(), Vertex{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  }

  bool run() { return extend(0); }

private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Vertex v = order_[depth];
    for (Vertex w = 0; w < h_.vertex_count(); ++w) {
      if (used_[w] || h_.degree(w) != g_.degree(v)) continue;
      bool consistent = true;
      for (std::size_t i = 0; i < depth && consistent; ++i) {
        const Vertex u = order_[i];
        consistent = g_.adjacent(u, v) == h_.adjacent(image_[u], w);
      }
      if (!consistent) continue;
      image_[v] = w;
      used_[w] = true;
      if (extend(depth + 1)) return true;
      used_[w] = false;
    }
    return false;
  }

  const Graph& g_;
  const Graph& h_;
  std::vector<Vertex> order_;
  std::vector<Vertex> image_;
  std::vector<bool> used_;
};

// Cheap isomorphism invariant used to bucket candidates before matching.
std::vector<std::size_t> invariant(const Graph& g) {
  std::vector<std::vector<std::size_t>> profile(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    profile[v].push_back(g.degree(v));
    for (Vertex w : g.neighbors(v)) profile[v].push_back(g.degree(w));
    std::sort(profile[v].begin() + 1, profile[v].end());
  }
  std::sort(profile.begin(), profile.end());
  std::vector<std::size_t> key{g.vertex_count(), g.edge_count()};
  for (const auto& p : profile) {
    key.push_back(p.size());
    key.insert(key.end(), p.begin(), p.end());
  }
  return key;
}

}  // namespace

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.vertex_count() > kIsomorphismVertexLimit || h.vertex_count() > kIsomorphismVertexLimit) {
    throw std::domain_error("is_isomorphic is limited to graphs with at most 10 vertices");
  }
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  if (g.degree_sequence() != h.degree_sequence()) return false;
  return Matcher(g, h).run();
}

std::vector<Graph> enumerate_nonisomorphic(std::size_t max_n) {
  if (max_n > kEnumerationVertexLimit) {
    throw std::domain_error("enumerate_nonisomorphic is limited to max_n <= 7");
  }
  std::vector<Graph> all;
  if (max_n == 0) return all;

  // Every graph on n vertices minus its last vertex is isomorphic to some
  // representative on n-1 vertices, so extending each representative by a
  // new vertex in every possible way reaches every class.
  std::vector<Graph> previous{Graph(1)};
  all = previous;
  for (std::size_t n = 2; n <= max_n; ++n) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
    std::vector<Graph> current;
    const auto fresh = static_cast<Vertex>(n - 1);
    for (const auto& base : previous) {
      for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
        std::vector<Edge> edges(base.edges().begin(), base.edges().end());
        for (Vertex v = 0; v < fresh; ++v) {
          if ((mask >> v) & 1U) edges.emplace_back(v, fresh);
        }
        Graph candidate(n, std::move(edges));
        auto& bucket = buckets[invariant(candidate)];
        const bool seen = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t i) {
          return is_isomorphic(current[i], candidate);
        });
        if (!seen) {
          bucket.push_back(current.size());
          current.push_back(std::move(candidate));
        }
      }
    }
    all.insert(all.end(), current.begin(), current.end());
    previous = std::move(current);
  }
  return all;
}

}  // namespace homembed

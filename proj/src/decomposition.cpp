#include "homembed/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace homembed {
namespace {

Validation fail(std::string why) { return {false, std::move(why)}; }

Bag without(const Bag& bag, Vertex v) {
  Bag out;
  out.reserve(bag.size());
  std::copy_if(bag.begin(), bag.end(), std::back_inserter(out), [v](Vertex x) { return x != v; });
  return out;
}

Bag with(const Bag& bag, Vertex v) {
  Bag out = bag;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

bool contains(const Bag& bag, Vertex v) { return std::binary_search(bag.begin(), bag.end(), v); }

}  // namespace

int TreeDecomposition::width() const noexcept {
  std::size_t largest = 0;
  for (const auto& b : bags) largest = std::max(largest, b.size());
  return static_cast<int>(largest) - 1;
}

int NiceTreeDecomposition::width() const noexcept {
  std::size_t largest = 0;
  for (const auto& n : nodes) largest = std::max(largest, n.bag.size());
  return static_cast<int>(largest) - 1;
}

Validation validate_structure(const TreeDecomposition& td) {
  const std::size_t count = td.bags.size();
  if (count == 0) return fail("decomposition has no bags");

  Vertex max_vertex = 0;
  bool any_vertex = false;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& bag = td.bags[i];
    if (std::adjacent_find(bag.begin(), bag.end(), std::greater_equal<>()) != bag.end()) {
      return fail("bag " + std::to_string(i) + " is not strictly ascending");
    }
    if (!bag.empty()) {
      max_vertex = std::max(max_vertex, bag.back());
      any_vertex = true;
    }
  }

  if (td.tree_edges.size() != count - 1) {
    return fail("tree: " + std::to_string(count) + " bags need " + std::to_string(count - 1) +
                " tree edges, found " + std::to_string(td.tree_edges.size()));
  }
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : td.tree_edges) {
    if (a >= count || b >= count) return fail("tree: edge references a missing bag");
    const auto ra = find(a), rb = find(b);
    if (ra == rb) return fail("tree: edge {" + std::to_string(a) + "," + std::to_string(b) + "} closes a cycle");
    parent[ra] = rb;
  }

  // For a tree, the bags holding v induce a subtree iff they span
  // exactly (#bags holding v) - 1 tree edges.
  if (any_vertex) {
    std::vector<std::size_t> holders(max_vertex + 1, 0), links(max_vertex + 1, 0);
    for (const auto& bag : td.bags) {
      for (Vertex v : bag) ++holders[v];
    }
    for (const auto& [a, b] : td.tree_edges) {
      const auto& x = td.bags[a];
      const auto& y = td.bags[b];
      std::vector<Vertex> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
      for (Vertex v : common) ++links[v];
    }
    for (Vertex v = 0; v <= max_vertex; ++v) {
      if (holders[v] > 0 && links[v] + 1 != holders[v]) {
        return fail("running intersection: bags containing vertex " + std::to_string(v) +
                    " are not connected");
      }
    }
  }
  return {};
}

Validation validate(const Graph& pattern, const TreeDecomposition& td) {
  if (auto structural = validate_structure(td); !structural) return structural;

  const std::size_t n = pattern.vertex_count();
  std::vector<std::vector<std::size_t>> holders(n);
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    for (Vertex v : td.bags[i]) {
      if (v >= n) {
        return fail("bag " + std::to_string(i) + " names vertex " + std::to_string(v) +
                    " outside the pattern");
      }
      holders[v].push_back(i);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (holders[v].empty()) return fail("vertex coverage: vertex " + std::to_string(v) + " is in no bag");
  }
  for (const auto& [u, v] : pattern.edges()) {
    const bool covered = std::any_of(holders[u].begin(), holders[u].end(),
                                     [&](std::size_t i) { return contains(td.bags[i], v); });
    if (!covered) {
      return fail("edge coverage: edge {" + std::to_string(u) + "," + std::to_string(v) +
                  "} is in no bag");
    }
  }
  return {};
}

TreeDecomposition trivial_decomposition(const Graph& pattern) {
  Bag all(pattern.vertex_count());
  std::iota(all.begin(), all.end(), Vertex{0});
  return {{std::move(all)}, {}};
}

TreeDecomposition restrict(const TreeDecomposition& td, std::span<const Vertex> kept) {
  std::vector<Vertex> keep(kept.begin(), kept.end());
  std::sort(keep.begin(), keep.end());
  TreeDecomposition out{{}, td.tree_edges};
  out.bags.reserve(td.bags.size());
  for (const auto& bag : td.bags) {
    Bag b;
    std::set_intersection(bag.begin(), bag.end(), keep.begin(), keep.end(), std::back_inserter(b));
    out.bags.push_back(std::move(b));
  }
  return out;
}

TreeDecomposition rename_vertices(const TreeDecomposition& td, std::span<const Vertex> mapping) {
  TreeDecomposition out{{}, td.tree_edges};
  out.bags.reserve(td.bags.size());
  for (const auto& bag : td.bags) {
    Bag b;
    b.reserve(bag.size());
    for (Vertex v : bag) {
      if (v >= mapping.size()) throw std::invalid_argument("rename_vertices: vertex outside mapping");
      b.push_back(mapping[v]);
    }
    std::sort(b.begin(), b.end());
    out.bags.push_back(std::move(b));
  }
  return out;
}

KTree sample_ktree(std::size_t k, std::size_t size, Rng& rng) {
  if (size == 0) throw std::invalid_argument("sample_ktree requires size >= 1");
  if (size <= k + 1) {
    Graph g = generate(Family::complete, size);
    return {g, trivial_decomposition(g)};
  }

  std::vector<Edge> edges;
  TreeDecomposition td;
  Bag seed(k + 1);
  std::iota(seed.begin(), seed.end(), Vertex{0});
  for (Vertex a = 0; a <= k; ++a) {
    for (Vertex b = a + 1; b <= k; ++b) edges.emplace_back(a, b);
  }
  td.bags.push_back(std::move(seed));

  for (auto v = static_cast<Vertex>(k + 1); v < size; ++v) {
    const auto host = static_cast<std::size_t>(rng.uniform_index(td.bags.size()));
    const auto drop = static_cast<std::size_t>(rng.uniform_index(k + 1));
    Bag bag;
    bag.reserve(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i != drop) bag.push_back(td.bags[host][i]);
    }
    for (Vertex u : bag) edges.emplace_back(u, v);
    bag.push_back(v);
    td.bags.push_back(std::move(bag));
    td.tree_edges.emplace_back(host, td.bags.size() - 1);
  }
  return {Graph(size, std::move(edges)), std::move(td)};
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  if (auto check = validate_structure(td); !check) {
    throw std::invalid_argument("make_nice: " + check.diagnostic);
  }
  const std::size_t count = td.bags.size();
  std::vector<std::vector<std::size_t>> adjacent(count);
  for (const auto& [a, b] : td.tree_edges) {
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  // Breadth-first order from bag 0; children are visited in ascending index.
  std::vector<std::size_t> order{0};
  std::vector<std::size_t> parent(count, count);
  std::vector<std::vector<std::size_t>> children(count);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto b = order[i];
    std::sort(adjacent[b].begin(), adjacent[b].end());
    for (auto c : adjacent[b]) {
      if (parent[c] != count) continue;
      parent[c] = b;
      children[b].push_back(c);
      order.push_back(c);
    }
  }

  NiceTreeDecomposition ntd;
  auto emit = [&](NodeKind kind, Vertex v, std::vector<std::size_t> kids, Bag bag) {
    ntd.nodes.push_back({kind, v, std::move(kids), std::move(bag)});
    return ntd.nodes.size() - 1;
  };
  // Walk from node `at` (whose bag is `from`) to a node whose bag is `to`.
  auto transition = [&](std::size_t at, const Bag& from, const Bag& to) {
    Bag current = from;
    for (Vertex v : from) {
      if (contains(to, v)) continue;
      current = without(current, v);
      at = emit(NodeKind::forget, v, {at}, current);
    }
    for (Vertex v : to) {
      if (contains(from, v)) continue;
      current = with(current, v);
      at = emit(NodeKind::introduce, v, {at}, current);
    }
    return at;
  };

  std::vector<std::size_t> top(count);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto b = *it;
    const Bag& bag = td.bags[b];
    std::vector<std::size_t> chains;
    for (auto c : children[b]) chains.push_back(transition(top[c], td.bags[c], bag));
    if (chains.empty()) chains.push_back(transition(emit(NodeKind::leaf, 0, {}, {}), {}, bag));
    auto joined = chains.front();
    for (std::size_t i = 1; i < chains.size(); ++i) {
      joined = emit(NodeKind::join, 0, {joined, chains[i]}, bag);
    }
    top[b] = joined;
  }
  const auto root = transition(top[0], td.bags[0], {});
  if (root != ntd.nodes.size() - 1) throw std::logic_error("make_nice: root is not the last node");
  return ntd;
}

Validation validate_nice(const NiceTreeDecomposition& ntd) {
  if (ntd.nodes.empty()) return fail("nice decomposition has no nodes");
  std::vector<std::size_t> parents(ntd.nodes.size(), 0);
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& node = ntd.nodes[i];
    const auto at = "node " + std::to_string(i) + ": ";
    if (std::adjacent_find(node.bag.begin(), node.bag.end(), std::greater_equal<>()) != node.bag.end()) {
      return fail(at + "bag is not strictly ascending");
    }
    for (auto c : node.children) {
      if (c >= i) return fail(at + "child does not precede its parent");
      ++parents[c];
    }
    switch (node.kind) {
      case NodeKind::leaf:
        if (!node.children.empty() || !node.bag.empty()) return fail(at + "leaf must be childless with an empty bag");
        break;
      case NodeKind::introduce: {
        if (node.children.size() != 1) return fail(at + "introduce needs one child");
        const auto& child = ntd.nodes[node.children[0]].bag;
        if (contains(child, node.vertex) || with(child, node.vertex) != node.bag) {
          return fail(at + "introduce must add exactly its vertex");
        }
        break;
      }
      case NodeKind::forget: {
        if (node.children.size() != 1) return fail(at + "forget needs one child");
        const auto& child = ntd.nodes[node.children[0]].bag;
        if (!contains(child, node.vertex) || without(child, node.vertex) != node.bag) {
          return fail(at + "forget must remove exactly its vertex");
        }
        break;
      }
      case NodeKind::join:
        if (node.children.size() != 2) return fail(at + "join needs two children");
        for (auto c : node.children) {
          if (ntd.nodes[c].bag != node.bag) return fail(at + "join children must share its bag");
        }
        break;
    }
  }
  if (!ntd.nodes.back().bag.empty()) return fail("root bag must be empty");
  for (std::size_t i = 0; i + 1 < ntd.nodes.size(); ++i) {
    if (parents[i] != 1) return fail("node " + std::to_string(i) + " must have exactly one parent");
  }
  return {};
}

TreeDecomposition underlying(const NiceTreeDecomposition& ntd) {
  TreeDecomposition td;
  td.bags.reserve(ntd.nodes.size());
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    td.bags.push_back(ntd.nodes[i].bag);
    for (auto c : ntd.nodes[i].children) td.tree_edges.emplace_back(c, i);
  }
  return td;
}

}  // namespace homembed

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homembed/graph.hpp"
#include "homembed/random.hpp"

namespace homembed {

using Bag = std::vector<Vertex>;  // sorted, duplicate-free

/// Tree of vertex bags. Width is the largest bag size minus one
/// (-1 for a decomposition whose bags are all empty).
struct TreeDecomposition {
  std::vector<Bag> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

  int width() const noexcept;

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

/// Outcome of `validate`; `diagnostic` names the first violated invariant.
struct Validation {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

/// Checks the tree shape, vertex coverage, edge coverage and running
/// intersection of `td` against `pattern`.
Validation validate(const Graph& pattern, const TreeDecomposition& td);

/// Tree shape, bag well-formedness and running intersection only.
Validation validate_structure(const TreeDecomposition& td);

/// One bag holding every vertex.
TreeDecomposition trivial_decomposition(const Graph& pattern);

/// Intersects every bag with `kept`. Empty bags stay in place so the tree
/// shape is unchanged; vertex ids are not renamed.
TreeDecomposition restrict(const TreeDecomposition& td, std::span<const Vertex> kept);

/// Renames vertex v to mapping[v] in every bag; bags are re-sorted.
TreeDecomposition rename_vertices(const TreeDecomposition& td, std::span<const Vertex> mapping);

struct KTree {
  Graph graph;
  TreeDecomposition decomposition;
};

/// Random k-tree on `size` vertices: K_{k+1} on 0..k, then each further
/// vertex attached to a k-subset of a uniformly chosen existing bag. For
/// size <= k+1 the result is K_size with a single bag.
KTree sample_ktree(std::size_t k, std::size_t size, Rng& rng);

enum class NodeKind { leaf, introduce, forget, join };

struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  Vertex vertex = 0;                   // introduce / forget only
  std::vector<std::size_t> children;   // 0, 1 or 2 entries
  Bag bag;
};

/// Rooted nice tree decomposition. Nodes are stored children-first, so the
/// root is the last node and a forward scan is a valid evaluation order.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;

  std::size_t root() const noexcept { return nodes.size() - 1; }
  int width() const noexcept;
};

/// Rooted at bag 0; introduce and forget chains run in ascending vertex
/// order. Throws std::invalid_argument when `td` is structurally invalid.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

/// Checks the node-kind rules of a nice decomposition.
Validation validate_nice(const NiceTreeDecomposition& ntd);

/// Plain tree decomposition with one bag per nice node.
TreeDecomposition underlying(const NiceTreeDecomposition& ntd);

}  // namespace homembed

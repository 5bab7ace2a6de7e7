#pragma once

#include <cstddef>
#include <vector>

#include "homembed/graph.hpp"

namespace homembed {

inline constexpr std::size_t kIsomorphismVertexLimit = 10;
inline constexpr std::size_t kEnumerationVertexLimit = 7;

/// Brute-force isomorphism test with degree pruning. This is a test oracle:
/// refuses (std::domain_error) graphs with more than 10 vertices.
bool is_isomorphic(const Graph& g, const Graph& h);

/// One representative per isomorphism class of graphs with 1..max_n
/// vertices, ordered by vertex count. Refuses max_n > 7.
std::vector<Graph> enumerate_nonisomorphic(std::size_t max_n);

}  // namespace homembed

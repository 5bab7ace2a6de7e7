#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "homembed/graph.hpp"

namespace homembed {

/// Full 1-WL refinement history of a graph.
///
/// Round 0 lists (degree) -> multiplicity. Each later round lists the
/// distinct (previous color, sorted neighbour colors) tuples with their
/// multiplicities, sorted; a tuple's rank in that list is the color used by
/// the next round. Two graphs are 1-WL equivalent iff their histories match.
struct ColorSignature {
  using Tuple = std::vector<std::uint64_t>;
  using Round = std::vector<std::pair<Tuple, std::size_t>>;

  std::vector<Round> rounds;

  std::size_t stable_color_count() const noexcept { return rounds.empty() ? 0 : rounds.back().size(); }

  /// 64-bit FNV-1a over the serialized history.
  std::uint64_t hash() const;
  /// hash() as 16 lowercase hex digits.
  std::string hex() const;

  friend bool operator==(const ColorSignature&, const ColorSignature&) = default;
};

/// Refines until the number of color classes stops growing (at most v(G)
/// rounds after the degree coloring).
ColorSignature wl1_signature(const Graph& g);

}  // namespace homembed

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homembed/decomposition.hpp"
#include "homembed/graph.hpp"

namespace homembed {

/// Exact homomorphism count, unbounded.
using HomCount = boost::multiprecision::cpp_int;

/// hom_bruteforce refuses inputs with v(G)^v(F) above this many maps.
inline constexpr double kBruteForceMapLimit = 1e8;

/// Counts edge-preserving maps V(F) -> V(G) by enumeration. Test oracle;
/// throws std::domain_error above kBruteForceMapLimit.
HomCount hom_bruteforce(const Graph& pattern, const Graph& target);

/// Precomputed tree-decomposition DP for one pattern.
///
/// Construction validates the decomposition against the pattern (throws
/// std::invalid_argument otherwise) and lays out per-node bookkeeping, so a
/// plan can count into many targets. Tables map assignments of the bag
/// (ascending vertex order, base-v(G) digits) to the number of consistent
/// extensions over the vertices forgotten below. Small tables are dense
/// arrays, larger ones sorted sparse vectors of non-zero entries.
///
/// Entries are accumulated in the narrowest of uint64 / uint128 / cpp_int
/// that provably holds every intermediate value: an entry at node t is at
/// most hom(F[V_t], G) <= prod over components C of F[V_t] of
/// v(G) * maxdeg(G)^(|C|-1), V_t being the bag plus everything forgotten
/// below t.
class CountingPlan {
public:
  CountingPlan(const Graph& pattern, const TreeDecomposition& td);
  CountingPlan(const Graph& pattern, NiceTreeDecomposition ntd);

  HomCount count(const Graph& target) const;

  const Graph& pattern() const noexcept { return pattern_; }
  const NiceTreeDecomposition& nice() const noexcept { return nice_; }

  /// log2 of the intermediate-value bound for `target`.
  double bound_bits(const Graph& target) const;

  struct Step {
    NodeKind kind;
    std::size_t first = 0;           // child index (introduce, forget, join)
    std::size_t second = 0;          // second child (join)
    std::size_t bag_size = 0;
    std::size_t position = 0;        // digit of the introduced / forgotten vertex
    std::vector<std::size_t> anchors;  // child-bag digits of F-neighbours (introduce)
  };

private:
  void prepare();

  template <class T>
  HomCount run(const Graph& target) const;

  Graph pattern_;
  NiceTreeDecomposition nice_;
  std::vector<Step> steps_;
  std::size_t max_bag_ = 0;
  // (components, vertices) of F[V_t] for every node t.
  std::vector<std::pair<std::size_t, std::size_t>> extents_;
};

/// Treewidth DP over a nice decomposition; equals hom_bruteforce.
HomCount hom_dp(const Graph& pattern, const NiceTreeDecomposition& ntd, const Graph& target);

/// Convenience: make_nice + hom_dp.
HomCount hom_dp(const Graph& pattern, const TreeDecomposition& td, const Graph& target);

/// count / v(G)^v(F), formed as an exact ratio before rounding to double.
/// Throws std::domain_error for an empty target.
double hom_density(const Graph& pattern, const Graph& target, const HomCount& count);

/// hom_{v(G)}: zero when the pattern is larger than the target.
template <class CountFn>
HomCount hom_truncated(const Graph& pattern, const Graph& target, CountFn&& count_fn) {
  if (pattern.vertex_count() > target.vertex_count()) return HomCount{0};
  return std::forward<CountFn>(count_fn)(pattern, target);
}

/// ln(1 + count) without overflowing double for huge counts.
double log1p_count(const HomCount& count);

/// Nearest double; +inf beyond the double range.
double to_double(const HomCount& count);

}  // namespace homembed

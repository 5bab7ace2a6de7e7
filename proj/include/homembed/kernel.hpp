#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homembed/embedding.hpp"
#include "homembed/graph.hpp"
#include "homembed/hom_count.hpp"
#include "homembed/sampler.hpp"

namespace homembed {

enum class KernelKind { dot, averaged_density, min_kernel };

std::string_view to_string(KernelKind kind);

/// Symmetric matrix of pairwise kernel values, row-major.
struct GramMatrix {
  std::vector<std::string> graph_ids;
  std::vector<double> values;
  KernelKind kind = KernelKind::dot;

  std::size_t size() const noexcept { return graph_ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

/// Exact-integer Gram entries must stay at or below this to be representable.
inline constexpr double kExactGramLimit = 9007199254740992.0;  // 2^53

/// Pairwise dot products of embedding rows. Density rows give the averaged
/// density kernel, truncated rows the min-kernel over the bank, everything
/// else the plain dot kernel. Exact modes sum in big integers and throw
/// std::overflow_error if an entry exceeds kExactGramLimit.
GramMatrix gram(const EmbeddingMatrix& emb);

/// sum of hom(F,G) * hom(F,H) over bank patterns with v(F) <= min(v(G), v(H)).
HomCount min_kernel(const Graph& g, const Graph& h, const PatternBank& bank);

/// Same value read off two rows of a truncated-mode embedding.
HomCount min_kernel(const EmbeddingMatrix& truncated, std::size_t i, std::size_t j);

/// ||row_i - row_j||^2 computed through the kernel: k(i,i) - 2k(i,j) + k(j,j).
double squared_distance(const GramMatrix& gram, std::size_t i, std::size_t j);

/// Smallest l with 2 * |S|^2 * exp(-2 eps^2 l) <= delta. Throws
/// std::domain_error unless eps, delta lie in (0,1) and sample_size >= 1.
std::uint64_t hoeffding_samples(double eps, double delta, std::uint64_t sample_size);

/// hoeffding_samples with |S| = 2^(n^2), the bound on graphs of size <= n.
std::uint64_t hoeffding_samples_all(double eps, double delta, std::uint64_t n);

/// True iff 2 * exp(2 ln|S|) * exp(-2 eps^2 l) <= delta, evaluated in log space.
bool hoeffding_satisfied(double eps, double delta, double log_sample_size, std::uint64_t l);

/// `count` patterns drawn uniformly with replacement from `pool`, renumbered
/// 0..count-1. The pool plays the role of a finite distribution with known
/// frequencies; its averaged density Gram is the exact expectation of the
/// Gram of any bank drawn here.
PatternBank resample_bank(const PatternBank& pool, std::size_t count, std::uint64_t seed);

struct PairDeviation {
  std::size_t i = 0, j = 0;
  double kernel_sampled = 0, kernel_reference = 0;
  double sqdist_sampled = 0, sqdist_reference = 0;
  double kernel_deviation() const;
  double sqdist_deviation() const;
};

struct DeviationReport {
  std::vector<PairDeviation> pairs;  // all i <= j
  double max_kernel_deviation = 0;
  double max_sqdist_deviation = 0;
};

/// Compares a sampled Gram against a reference Gram over the same graphs.
/// Throws std::invalid_argument when graph ids or kernel kinds differ.
DeviationReport distance_check(const GramMatrix& sampled, const GramMatrix& reference);

struct ClassPairStats {
  std::size_t pairs = 0;
  std::size_t distinguished = 0;
};

struct DistinguishReport {
  std::size_t pairs_total = 0;
  std::size_t pairs_distinguished = 0;
  // Keyed by the ordered label pair (a <= b), same-class pairs included.
  std::map<std::pair<std::string, std::string>, ClassPairStats> by_class_pair;
  EmbeddingMode mode = EmbeddingMode::hom;
  double tolerance = 0;
};

inline constexpr double kRowTolerance = 1e-9;

/// Counts pairs of rows that differ: exactly in exact modes, by more than
/// `tolerance` in some coordinate otherwise. Labels, if given, need one entry
/// per row.
DistinguishReport distinguishability_report(const EmbeddingMatrix& emb,
                                            const std::optional<std::vector<std::string>>& labels = std::nullopt,
                                            double tolerance = kRowTolerance);

/// {"pairs_total", "pairs_distinguished", "by_class_pair": {"a|b": {pairs,
/// distinguished, rate}}, "mode", "tolerance"}.
std::string report_to_json(const DistinguishReport& report);

/// Header "graph_id,<id0>,<id1>,..."; one row per graph, values as %.17g.
void write_gram_csv(std::ostream& out, const GramMatrix& gram);

}  // namespace homembed

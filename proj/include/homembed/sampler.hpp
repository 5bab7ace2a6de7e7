#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homembed/decomposition.hpp"
#include "homembed/graph.hpp"
#include "homembed/random.hpp"

namespace homembed {

enum class LambdaMode {
  paper_strict,  // k = Poisson(lambda)
  shifted,       // k = 1 + Poisson(lambda)
};

enum class SizeMode { uniform_1_to_n };

std::string_view to_string(LambdaMode mode);
std::string_view to_string(SizeMode mode);
LambdaMode parse_lambda_mode(std::string_view name);
SizeMode parse_size_mode(std::string_view name);

/// Parameters of the pattern distribution.
struct SamplerConfig {
  std::size_t n = 1;  // largest dataset graph size
  unsigned d = 2;     // target runtime exponent
  LambdaMode lambda_mode = LambdaMode::shifted;
  SizeMode size_mode = SizeMode::uniform_1_to_n;
  double vertex_keep_prob = 1.0;  // (0, 1]
  double edge_keep_prob = 0.5;    // (0, 1]
  std::optional<std::size_t> treewidth_cap;
  std::uint64_t seed = 0;

  /// Poisson rate (1 + d ln n) / n.
  double lambda() const;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;

  friend bool operator==(const SamplerConfig&, const SamplerConfig&) = default;
};

struct PatternSample {
  Graph pattern;
  TreeDecomposition decomposition;  // width <= drawn_k
  std::size_t drawn_k = 0;
  std::size_t drawn_size = 0;
  std::size_t ordinal = 0;

  friend bool operator==(const PatternSample&, const PatternSample&) = default;
};

struct PatternBank {
  SamplerConfig config;
  std::vector<PatternSample> patterns;

  std::size_t size() const noexcept { return patterns.size(); }

  friend bool operator==(const PatternBank&, const PatternBank&) = default;
};

/// Poisson draw (shifted by one in shifted mode), clamped to n-1 and to
/// the treewidth cap.
std::size_t draw_treewidth_bound(const SamplerConfig& cfg, Rng& rng);

/// Treewidth bound, uniform size, random k-tree, then independent vertex
/// and edge deletion; the k-tree decomposition is restricted to the
/// surviving vertices and relabelled with them. Draws yielding no vertex
/// are discarded and redrawn.
PatternSample sample_pattern(const SamplerConfig& cfg, Rng& rng);

/// `count` i.i.d. patterns from a stream seeded with cfg.seed.
PatternBank sample_bank(const SamplerConfig& cfg, std::size_t count);

struct DistinguishOutcome {
  PatternBank bank;                        // every pattern drawn so far
  std::optional<std::size_t> distinguishing;  // index into bank.patterns

  bool exhausted() const noexcept { return !distinguishing.has_value(); }
};

/// Draws patterns one at a time until hom(F, g) != hom(F, h), or until
/// `cap` patterns have been drawn without success.
DistinguishOutcome sample_until_distinguished(const SamplerConfig& cfg, const Graph& g, const Graph& h,
                                              std::size_t cap);

/// Bank of explicitly given patterns, each with a single-bag decomposition.
PatternBank explicit_bank(const std::vector<Graph>& patterns);

}  // namespace homembed

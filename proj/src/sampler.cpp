#include "homembed/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "homembed/hom_count.hpp"

namespace homembed {

std::string_view to_string(LambdaMode mode) {
  return mode == LambdaMode::paper_strict ? "paper-strict" : "shifted";
}

std::string_view to_string(SizeMode) { return "uniform-1-to-n"; }

LambdaMode parse_lambda_mode(std::string_view name) {
  if (name == "paper-strict") return LambdaMode::paper_strict;
  if (name == "shifted") return LambdaMode::shifted;
  throw std::invalid_argument("unknown lambda mode '" + std::string(name) + "'");
}

SizeMode parse_size_mode(std::string_view name) {
  if (name == "uniform-1-to-n") return SizeMode::uniform_1_to_n;
  throw std::invalid_argument("unknown size mode '" + std::string(name) + "'");
}

double SamplerConfig::lambda() const {
  return (1.0 + static_cast<double>(d) * std::log(static_cast<double>(n))) / static_cast<double>(n);
}

void SamplerConfig::validate() const {
  if (n < 1) throw std::invalid_argument("sampler: n must be positive");
  if (d < 1) throw std::invalid_argument("sampler: d must be positive");
  if (!(vertex_keep_prob > 0.0 && vertex_keep_prob <= 1.0)) {
    throw std::invalid_argument("sampler: vertex keep probability must lie in (0, 1]");
  }
  if (!(edge_keep_prob > 0.0 && edge_keep_prob <= 1.0)) {
    throw std::invalid_argument("sampler: edge keep probability must lie in (0, 1]");
  }
  if (!(lambda() > 0.0) || !std::isfinite(lambda())) {
    throw std::invalid_argument("sampler: Poisson rate must be positive and finite");
  }
}

std::size_t draw_treewidth_bound(const SamplerConfig& cfg, Rng& rng) {
  std::uint64_t k = rng.poisson(cfg.lambda());
  if (cfg.lambda_mode == LambdaMode::shifted) ++k;
  k = std::min<std::uint64_t>(k, cfg.n - 1);
  if (cfg.treewidth_cap) k = std::min<std::uint64_t>(k, *cfg.treewidth_cap);
  return static_cast<std::size_t>(k);
}

PatternSample sample_pattern(const SamplerConfig& cfg, Rng& rng) {
  while (true) {
    const std::size_t k = draw_treewidth_bound(cfg, rng);
    const std::size_t size = 1 + static_cast<std::size_t>(rng.uniform_index(cfg.n));
    KTree tree = sample_ktree(k, size, rng);

    std::vector<Vertex> kept;
    std::vector<Vertex> rename(size, 0);
    for (Vertex v = 0; v < size; ++v) {
      if (rng.bernoulli(cfg.vertex_keep_prob)) {
        rename[v] = static_cast<Vertex>(kept.size());
        kept.push_back(v);
      }
    }
    if (kept.empty()) continue;

    std::vector<char> alive(size, 0);
    for (Vertex v : kept) alive[v] = 1;
    std::vector<Edge> edges;
    for (const auto& [u, v] : tree.graph.edges()) {
      if (alive[u] && alive[v] && rng.bernoulli(cfg.edge_keep_prob)) edges.emplace_back(rename[u], rename[v]);
    }

    PatternSample sample;
    sample.pattern = Graph(kept.size(), std::move(edges));
    sample.decomposition = rename_vertices(restrict(tree.decomposition, kept), rename);
    sample.drawn_k = k;
    sample.drawn_size = size;
    return sample;
  }
}

PatternBank sample_bank(const SamplerConfig& cfg, std::size_t count) {
  cfg.validate();
  if (count < 1) throw std::invalid_argument("sampler: pattern count must be positive");
  PatternBank bank{cfg, {}};
  bank.patterns.reserve(count);
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < count; ++i) {
    bank.patterns.push_back(sample_pattern(cfg, rng));
    bank.patterns.back().ordinal = i;
  }
  return bank;
}

DistinguishOutcome sample_until_distinguished(const SamplerConfig& cfg, const Graph& g, const Graph& h,
                                              std::size_t cap) {
  cfg.validate();
  DistinguishOutcome outcome{{cfg, {}}, std::nullopt};
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < cap; ++i) {
    PatternSample sample = sample_pattern(cfg, rng);
    sample.ordinal = i;
    const CountingPlan plan(sample.pattern, sample.decomposition);
    const bool differs = plan.count(g) != plan.count(h);
    outcome.bank.patterns.push_back(std::move(sample));
    if (differs) {
      outcome.distinguishing = i;
      break;
    }
  }
  return outcome;
}

PatternBank explicit_bank(const std::vector<Graph>& patterns) {
  if (patterns.empty()) throw std::invalid_argument("explicit_bank: no patterns given");
  PatternBank bank;
  std::size_t largest = 1;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    const auto& f = patterns[i];
    if (f.empty()) throw std::invalid_argument("explicit_bank: pattern " + std::to_string(i) + " has no vertices");
    largest = std::max(largest, f.vertex_count());
    bank.patterns.push_back({f, trivial_decomposition(f), f.vertex_count() - 1, f.vertex_count(), i});
  }
  bank.config.n = largest;
  bank.config.edge_keep_prob = 1.0;
  return bank;
}

}  // namespace homembed

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "homembed/bank_io.hpp"
#include "homembed/hom_count.hpp"
#include "homembed/isomorphism.hpp"
#include "homembed/sampler.hpp"

using namespace homembed;

namespace {

SamplerConfig config(std::size_t n, LambdaMode mode = LambdaMode::shifted) {
  SamplerConfig cfg;
  cfg.n = n;
  cfg.lambda_mode = mode;
  return cfg;
}

}  // namespace

TEST_CASE("random stream") {
  // The standard fixes the 10000th output of a default-seeded mt19937_64.
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  CHECK(x == 9981545732273789042ULL);

  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.uniform_index(7) < 7);
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(r.uniform_index(1) == 0);
  CHECK_THROWS(r.uniform_index(0));
  CHECK_THROWS(r.poisson(-1.0));
  CHECK(r.poisson(0.0) == 0);
  CHECK(r.bernoulli(1.0));
}

TEST_CASE("Poisson rate and treewidth draws") {
  const auto strict = config(41, LambdaMode::paper_strict);
  CHECK(strict.lambda() == doctest::Approx((1 + 2 * std::log(41.0)) / 41));
  CHECK(strict.lambda() == doctest::Approx(0.2056).epsilon(1e-3));

  Rng rng(17);
  double sum = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) sum += static_cast<double>(draw_treewidth_bound(strict, rng));
  CHECK(std::abs(sum / kDraws - strict.lambda()) <= 0.01);

  const auto shifted = config(41);
  std::size_t minimum = 100;
  for (int i = 0; i < 10000; ++i) minimum = std::min(minimum, draw_treewidth_bound(shifted, rng));
  CHECK(minimum == 1);

  auto capped = config(41);
  capped.treewidth_cap = 1;
  for (int i = 0; i < 10000; ++i) CHECK(draw_treewidth_bound(capped, rng) <= 1);

  // n = 1 clamps every draw to n - 1 = 0.
  const auto tiny = config(1);
  for (int i = 0; i < 100; ++i) CHECK(draw_treewidth_bound(tiny, rng) == 0);
}

TEST_CASE("config validation") {
  auto cfg = config(10);
  CHECK_NOTHROW(cfg.validate());
  cfg.edge_keep_prob = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(10);
  cfg.vertex_keep_prob = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(0);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = config(10);
  cfg.d = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(sample_bank(config(10), 0), std::invalid_argument);
  CHECK(parse_lambda_mode("paper-strict") == LambdaMode::paper_strict);
  CHECK_THROWS_AS(parse_lambda_mode("strict"), std::invalid_argument);
}

TEST_CASE("degenerate keep probabilities return the whole k-tree") {
  auto cfg = config(7);
  cfg.edge_keep_prob = 1.0;
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto s = sample_pattern(cfg, rng);
    const std::size_t k = s.drawn_k, size = s.drawn_size;
    CHECK(s.pattern.vertex_count() == size);
    if (size <= k + 1) {
      CHECK(s.pattern == generate(Family::complete, size));
    } else {
      CHECK(s.pattern.edge_count() == k * size - k * (k + 1) / 2);
    }
  }
}

TEST_CASE("sampled patterns carry valid certificates") {
  auto cfg = config(12);
  cfg.vertex_keep_prob = 0.8;
  Rng rng(123);
  for (int i = 0; i < 10000; ++i) {
    const auto s = sample_pattern(cfg, rng);
    CHECK(validate(s.pattern, s.decomposition));
    CHECK(s.decomposition.width() <= static_cast<int>(s.drawn_k));
    CHECK(s.pattern.vertex_count() >= 1);
    CHECK(s.pattern.vertex_count() <= cfg.n);
  }
}

TEST_CASE("small patterns of both treewidths appear") {
  const auto cfg = config(6);
  const Graph k2 = generate(Family::complete, 2);
  const Graph c3 = generate(Family::cycle, 3);
  Rng rng(2);
  std::size_t edges = 0, triangles = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto s = sample_pattern(cfg, rng);
    if (s.pattern.vertex_count() == 2 && s.pattern == k2) ++edges;
    if (s.pattern.vertex_count() == 3 && s.pattern.edge_count() == 3 && is_isomorphic(s.pattern, c3)) ++triangles;
  }
  CHECK(edges > 0);
  CHECK(triangles > 0);
}

TEST_CASE("banks are deterministic functions of the config") {
  auto cfg = config(41);
  cfg.seed = 7;
  const auto a = sample_bank(cfg, 50);
  const auto b = sample_bank(cfg, 50);
  CHECK(bank_to_json(a) == bank_to_json(b));
  CHECK(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.patterns[i].ordinal == i);
    CHECK(a.patterns[i].pattern.vertex_count() <= 41);
  }
  cfg.seed = 8;
  CHECK(bank_to_json(sample_bank(cfg, 50)) != bank_to_json(a));
}

TEST_CASE("treewidth cap 1 yields forests") {
  auto cfg = config(20);
  cfg.treewidth_cap = 1;
  cfg.edge_keep_prob = 1.0;
  for (const auto& p : sample_bank(cfg, 500).patterns) {
    CHECK(p.decomposition.width() <= 1);
    CHECK(p.pattern.edge_count() + p.pattern.component_count() == p.pattern.vertex_count());
  }
}

TEST_CASE("bank JSON round trip and schema") {
  auto cfg = config(9);
  cfg.vertex_keep_prob = 0.7;
  cfg.seed = 99;
  const auto bank = sample_bank(cfg, 40);
  const std::string text = bank_to_json(bank);
  CHECK(bank_from_json(text) == bank);
  CHECK(bank_to_json(bank_from_json(text)) == text);

  const auto pos = [&](const char* key) { return text.find(std::string("\"") + key + "\""); };
  CHECK(pos("config") < pos("patterns"));
  CHECK(pos("n") < pos("d"));
  CHECK(pos("lambda_mode") < pos("size_mode"));
  CHECK(pos("edge_keep_prob") < pos("treewidth_cap"));
  CHECK(pos("treewidth_cap") < pos("seed"));
  CHECK(pos("ordinal") < pos("drawn_k"));
  CHECK(pos("vertices") < pos("edges"));
  CHECK(pos("bags") < pos("tree_edges"));
  CHECK(text.find("\"treewidth_cap\": null") != std::string::npos);
  CHECK(text.find("\"lambda_mode\": \"shifted\"") != std::string::npos);

  CHECK_THROWS_AS(bank_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(bank_from_json("{\"config\": {}}"), std::invalid_argument);

  // Break edge coverage of one pattern: the loader must refuse it.
  PatternBank broken = explicit_bank({generate(Family::complete, 3)});
  broken.patterns[0].decomposition = TreeDecomposition{{{0, 1}, {1, 2}}, {{0, 1}}};
  CHECK_THROWS_AS(bank_from_json(bank_to_json(broken)), std::invalid_argument);
}

TEST_CASE("repeat until distinguished") {
  const auto cfg = config(6);
  const Graph c3 = generate(Family::cycle, 3);
  const Graph c6 = generate(Family::cycle, 6);
  const Graph two = disjoint_union(c3, c3);

  const auto out = sample_until_distinguished(cfg, c6, two, 10000);
  REQUIRE_FALSE(out.exhausted());
  const auto& f = out.bank.patterns[*out.distinguishing].pattern;
  CHECK(hom_bruteforce(f, c6) != hom_bruteforce(f, two));
  CHECK(out.bank.size() == *out.distinguishing + 1);
  for (std::size_t i = 0; i + 1 < out.bank.size(); ++i) {
    const auto& p = out.bank.patterns[i].pattern;
    CHECK(hom_bruteforce(p, c6) == hom_bruteforce(p, two));
  }

  const auto edge = sample_until_distinguished(cfg, generate(Family::complete, 2), Graph(2), 10000);
  REQUIRE_FALSE(edge.exhausted());
  CHECK(edge.bank.patterns[*edge.distinguishing].pattern.edge_count() > 0);

  const auto same = sample_until_distinguished(cfg, c6, c6, 300);
  CHECK(same.exhausted());
  CHECK(same.bank.size() == 300);
}

TEST_CASE("explicit banks") {
  const auto bank = explicit_bank({generate(Family::cycle, 4), Graph(1)});
  CHECK(bank.size() == 2);
  CHECK(bank.config.n == 4);
  CHECK(bank.patterns[0].decomposition.bags.size() == 1);
  CHECK(bank.patterns[1].ordinal == 1);
  CHECK_THROWS_AS(explicit_bank({}), std::invalid_argument);
  CHECK_THROWS_AS(explicit_bank({Graph(0)}), std::invalid_argument);
}

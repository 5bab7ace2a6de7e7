#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "homembed/embedding.hpp"
#include "homembed/hom_count.hpp"
#include "homembed/kernel.hpp"
#include "homembed/sampler.hpp"
#include "support.hpp"

using namespace homembed;
using testing_support::random_graph;
using testing_support::random_permutation;

namespace {

std::vector<Graph> random_corpus(std::size_t count, std::size_t max_n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Graph> graphs;
  for (std::size_t i = 0; i < count; ++i) graphs.push_back(random_graph(2 + rng.uniform_index(max_n - 1), 0.5, rng));
  return graphs;
}

PatternBank small_bank(std::size_t n, std::size_t count, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return sample_bank(cfg, count);
}

// Edgeless pattern on v vertices with a width-0 path decomposition.
PatternBank isolated_bank(std::size_t v) {
  PatternBank bank = explicit_bank({Graph(v)});
  auto& td = bank.patterns[0].decomposition;
  td = TreeDecomposition{};
  for (Vertex i = 0; i < v; ++i) {
    td.bags.push_back({i});
    if (i > 0) td.tree_edges.emplace_back(i - 1, i);
  }
  return bank;
}

double row_distance(const EmbeddingMatrix& e, std::size_t i, std::size_t j) {
  double s = 0;
  for (std::size_t c = 0; c < e.cols(); ++c) s += (e.real_at(i, c) - e.real_at(j, c)) * (e.real_at(i, c) - e.real_at(j, c));
  return s;
}

double min_eigenvalue(const GramMatrix& g) {
  Eigen::MatrixXd m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g.at(i, j);
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("embedding mode examples") {
  const Graph k2 = generate(Family::complete, 2);
  const Graph k3 = generate(Family::complete, 3);
  const auto c4 = explicit_bank({generate(Family::cycle, 4)});

  const auto hom = embed({k2}, c4, EmbeddingMode::hom);
  REQUIRE(hom.rows() == 1);
  REQUIRE(hom.cols() == 1);
  CHECK(hom.exact_at(0, 0) == 2);
  CHECK(hom.graph_ids[0] == "0");

  CHECK(embed({k3}, c4, EmbeddingMode::truncated).exact_at(0, 0) == 0);
  CHECK(embed({k3}, c4, EmbeddingMode::hom).exact_at(0, 0) == 18);

  const auto vertex = explicit_bank({Graph(1)});
  for (const auto& g : random_corpus(10, 8, 4)) CHECK(embed({g}, vertex, EmbeddingMode::density).real_at(0, 0) == 1.0);

  const auto log = embed({k3}, c4, EmbeddingMode::log1p);
  CHECK(log.real_at(0, 0) == doctest::Approx(std::log(19.0)));

  CHECK_THROWS_AS(embed({k2}, PatternBank{}, EmbeddingMode::hom), std::invalid_argument);
  CHECK_THROWS_AS(embed({Graph(0)}, c4, EmbeddingMode::hom), std::invalid_argument);
  CHECK_THROWS_AS(embed({k2, k3}, c4, EmbeddingMode::hom, 1, {"a"}), std::invalid_argument);

  auto broken = c4;
  broken.patterns[0].decomposition = TreeDecomposition{{{0, 1}}, {}};
  CHECK_THROWS_AS(embed({k2}, broken, EmbeddingMode::hom), std::invalid_argument);
  CHECK(parse_embedding_mode("standardized") == EmbeddingMode::standardized);
  CHECK_THROWS_AS(parse_embedding_mode("raw"), std::invalid_argument);
}

TEST_CASE("density entries are scaled once and stay in [0, 1]") {
  const auto graphs = random_corpus(12, 9, 1);
  const auto bank = small_bank(9, 30, 3);
  const auto d = embed(graphs, bank, EmbeddingMode::density);
  const auto h = embed(graphs, bank, EmbeddingMode::hom);
  CHECK(d.column_scale == doctest::Approx(1 / std::sqrt(30.0)));
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      CHECK(d.real_at(i, j) >= 0.0);
      CHECK(d.real_at(i, j) <= 1.0);
      CHECK(d.real_at(i, j) ==
            doctest::Approx(hom_density(bank.patterns[j].pattern, graphs[i], h.exact_at(i, j)) / std::sqrt(30.0)));
    }
  }
}

TEST_CASE("truncated mode zeroes exactly the oversized patterns") {
  const auto graphs = random_corpus(15, 9, 2);
  const auto bank = small_bank(9, 40, 5);
  const auto t = embed(graphs, bank, EmbeddingMode::truncated);
  const auto h = embed(graphs, bank, EmbeddingMode::hom);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const bool oversized = bank.patterns[j].pattern.vertex_count() > graphs[i].vertex_count();
      CHECK(t.exact_at(i, j) == (oversized ? HomCount(0) : h.exact_at(i, j)));
    }
  }
}

TEST_CASE("standardized columns") {
  const auto graphs = random_corpus(20, 8, 6);
  auto bank = small_bank(8, 25, 7);
  bank.patterns.push_back(explicit_bank({Graph(1)}).patterns[0]);  // constant only if sizes agree
  bank.patterns.back().ordinal = 25;
  const auto s = embed(graphs, bank, EmbeddingMode::standardized);
  for (std::size_t j = 0; j < s.cols(); ++j) {
    double mean = 0, sq = 0;
    for (std::size_t i = 0; i < s.rows(); ++i) mean += s.real_at(i, j);
    mean /= static_cast<double>(s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) sq += (s.real_at(i, j) - mean) * (s.real_at(i, j) - mean);
    const double sd = std::sqrt(sq / static_cast<double>(s.rows()));
    CHECK(std::abs(mean) <= 1e-12);
    const bool zero = sd == 0.0;
    if (!zero) CHECK(std::abs(sd - 1.0) <= 1e-9);
  }
  // A column constant over the corpus becomes all zeros.
  const std::vector<Graph> same_size(5, generate(Family::cycle, 5));
  const auto constant = embed(same_size, bank, EmbeddingMode::standardized);
  for (double x : constant.real) CHECK(x == 0.0);
  const auto single = embed({generate(Family::path, 4)}, bank, EmbeddingMode::standardized);
  for (double x : single.real) CHECK(x == 0.0);
}

TEST_CASE("cell results do not depend on the thread count") {
  const auto graphs = random_corpus(9, 10, 8);
  const auto bank = small_bank(10, 30, 9);
  const auto one = count_matrix(graphs, bank, 1);
  CHECK(count_matrix(graphs, bank, 4) == one);
  CHECK(count_matrix(graphs, bank, 0) == one);
}

TEST_CASE("embedding rows are invariant under vertex relabeling") {
  const auto graphs = random_corpus(20, 9, 10);
  const auto bank = small_bank(9, 30, 11);
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph& g = graphs[trial % graphs.size()];
    const Graph h = relabel(g, random_permutation(g.vertex_count(), rng));
    const auto e = embed({g, h}, bank, EmbeddingMode::hom);
    for (std::size_t j = 0; j < e.cols(); ++j) CHECK(e.exact_at(0, j) == e.exact_at(1, j));
  }
}

TEST_CASE("embedding CSV round trip") {
  const auto graphs = random_corpus(6, 9, 13);
  auto bank = small_bank(9, 12, 14);
  bank.patterns.push_back(isolated_bank(30).patterns[0]);  // 9^30 needs more than 64 bits
  bank.patterns.back().ordinal = 12;
  for (auto mode : {EmbeddingMode::hom, EmbeddingMode::truncated, EmbeddingMode::density, EmbeddingMode::log1p,
                    EmbeddingMode::standardized}) {
    const auto e = embed(graphs, bank, mode);
    std::stringstream buffer;
    write_embedding_csv(buffer, e);
    const std::string text = buffer.str();
    CHECK(text.rfind("graph_id,p0,p1,", 0) == 0);
    const auto back = read_embedding_csv(buffer, mode);
    CHECK(back.graph_ids == e.graph_ids);
    CHECK(back.exact == e.exact);
    CHECK(back.real == e.real);
    CHECK(back.mode == mode);
  }
  std::istringstream hom_text("graph_id,p0\nx,2\n");
  CHECK(read_embedding_csv(hom_text).mode == EmbeddingMode::hom);
  std::istringstream real_text("graph_id,p0\nx,0.5\n");
  CHECK(read_embedding_csv(real_text).mode == EmbeddingMode::log1p);
  std::istringstream ragged("graph_id,p0,p1\nx,1\n");
  CHECK_THROWS_AS(read_embedding_csv(ragged), std::invalid_argument);
  std::istringstream bad_header("id,p0\nx,1\n");
  CHECK_THROWS_AS(read_embedding_csv(bad_header), std::invalid_argument);
  std::istringstream not_integer("graph_id,p0\nx,1.5\n");
  CHECK_THROWS_AS(read_embedding_csv(not_integer, EmbeddingMode::hom), std::invalid_argument);
}

TEST_CASE("gram examples") {
  const auto vertex = explicit_bank({Graph(1)});
  const auto graphs = random_corpus(5, 8, 15);
  const auto g = gram(embed(graphs, vertex, EmbeddingMode::density));
  CHECK(g.kind == KernelKind::averaged_density);
  for (double x : g.values) CHECK(x == 1.0);

  CHECK(gram(embed(graphs, vertex, EmbeddingMode::hom)).kind == KernelKind::dot);
  CHECK(gram(embed(graphs, vertex, EmbeddingMode::truncated)).kind == KernelKind::min_kernel);

  // 30 isolated vertices into 9-vertex graphs: 9^60 per product.
  const auto huge = isolated_bank(30);
  CHECK_THROWS_AS(gram(embed({Graph(9)}, huge, EmbeddingMode::hom)), std::overflow_error);
  CHECK_NOTHROW(gram(embed({Graph(9)}, huge, EmbeddingMode::log1p)));

  std::ostringstream csv;
  write_gram_csv(csv, g);
  CHECK(csv.str().rfind("graph_id,0,1,2,3,4\n0,1,1,1,1,1\n", 0) == 0);
}

TEST_CASE("kernel values reproduce squared embedding distances") {
  const auto graphs = random_corpus(10, 9, 16);
  const auto bank = small_bank(9, 50, 17);
  for (auto mode : {EmbeddingMode::density, EmbeddingMode::log1p, EmbeddingMode::standardized}) {
    const auto e = embed(graphs, bank, mode);
    const auto g = gram(e);
    double scale = 0;
    for (double x : g.values) scale = std::max(scale, std::abs(x));
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t j = 0; j < e.rows(); ++j) {
        CHECK(g.at(i, j) == g.at(j, i));
        CHECK(std::abs(squared_distance(g, i, j) - row_distance(e, i, j)) <= 1e-12 * std::max(1.0, scale));
      }
      CHECK(g.at(i, i) >= 0.0);
    }
    CHECK(min_eigenvalue(g) >= -1e-9 * std::max(1.0, scale));
  }
}

TEST_CASE("min-kernel") {
  const Graph k3 = generate(Family::complete, 3);
  const Graph c4 = generate(Family::cycle, 4);
  const auto bank = explicit_bank({generate(Family::complete, 2), c4});
  CHECK(min_kernel(k3, k3, bank) == 36);
  CHECK(min_kernel(k3, c4, explicit_bank({c4})) == 0);
  CHECK(min_kernel(c4, c4, explicit_bank({c4})) == 32 * 32);

  const auto graphs = random_corpus(12, 9, 18);
  const auto sampled = small_bank(9, 40, 19);
  const auto t = embed(graphs, sampled, EmbeddingMode::truncated);
  const auto g = gram(t);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const HomCount direct = min_kernel(graphs[i], graphs[j], sampled);
      CHECK(direct == min_kernel(graphs[j], graphs[i], sampled));
      CHECK(min_kernel(t, i, j) == direct);
      CHECK(g.at(i, j) == direct.convert_to<double>());
    }
  }
  CHECK_THROWS_AS(min_kernel(embed(graphs, sampled, EmbeddingMode::hom), 0, 1), std::invalid_argument);
}

TEST_CASE("min-kernel values survive dataset growth") {
  auto graphs = random_corpus(8, 7, 20);
  const auto bank = small_bank(12, 60, 21);
  const auto before = embed(graphs, bank, EmbeddingMode::truncated);
  Rng rng(22);
  graphs.push_back(random_graph(12, 0.5, rng));
  const auto after = embed(graphs, bank, EmbeddingMode::truncated);
  for (std::size_t i = 0; i < before.rows(); ++i) {
    for (std::size_t j = 0; j < before.rows(); ++j) CHECK(min_kernel(before, i, j) == min_kernel(after, i, j));
  }
}

TEST_CASE("Hoeffding sample counts") {
  const double log2 = std::log(2.0);
  CHECK(hoeffding_samples(0.1, 0.1, 100) == 611);
  CHECK(hoeffding_satisfied(0.1, 0.1, std::log(100.0), 611));
  CHECK_FALSE(hoeffding_satisfied(0.1, 0.1, std::log(100.0), 610));
  CHECK(hoeffding_samples(0.1, 0.1, 1) == 150);
  CHECK_FALSE(hoeffding_satisfied(0.1, 0.1, 0.0, 149));

  CHECK(hoeffding_samples_all(0.1, 0.1, 5) == 1883);
  CHECK(hoeffding_satisfied(0.1, 0.1, 25 * log2, 1883));
  CHECK_FALSE(hoeffding_satisfied(0.1, 0.1, 25 * log2, 1882));
  // (200 ln 2 + ln 20) / 0.02 = 7081.2.
  CHECK(hoeffding_samples_all(0.1, 0.1, 10) == 7082);
  const double ratio = static_cast<double>(hoeffding_samples_all(0.1, 0.1, 100)) /
                       static_cast<double>(hoeffding_samples_all(0.1, 0.1, 50));
  CHECK(std::abs(ratio - 4.0) <= 0.05 * 4.0);

  std::uint64_t previous = UINT64_MAX;
  for (double eps = 0.01; eps < 1.0; eps += 0.01) {
    const auto l = hoeffding_samples(eps, 0.05, 1000);
    CHECK(l <= previous);
    previous = l;
  }
  previous = UINT64_MAX;
  for (double delta = 0.01; delta < 1.0; delta += 0.01) {
    const auto l = hoeffding_samples(0.05, delta, 1000);
    CHECK(l <= previous);
    previous = l;
  }
  for (std::uint64_t n = 1; n <= 7; ++n) {
    const std::uint64_t all = std::uint64_t{1} << (n * n);
    for (std::uint64_t m : {std::uint64_t{1}, all / 2 + 1, all}) {
      CHECK(hoeffding_samples_all(0.2, 0.1, n) >= hoeffding_samples(0.2, 0.1, m));
    }
  }
  CHECK_THROWS_AS(hoeffding_samples(0.0, 0.1, 10), std::domain_error);
  CHECK_THROWS_AS(hoeffding_samples(0.1, 1.0, 10), std::domain_error);
  CHECK_THROWS_AS(hoeffding_samples(0.1, 0.1, 0), std::domain_error);
  CHECK_THROWS_AS(hoeffding_samples_all(1.5, 0.1, 3), std::domain_error);
  CHECK_THROWS_AS(hoeffding_samples_all(0.1, 0.1, 0), std::domain_error);
}

TEST_CASE("distance check") {
  const auto graphs = random_corpus(6, 8, 23);
  const auto pool = small_bank(8, 300, 24);
  const auto reference = gram(embed(graphs, pool, EmbeddingMode::density));
  const auto sampled = gram(embed(graphs, resample_bank(pool, 80, 25), EmbeddingMode::density));
  const auto report = distance_check(sampled, reference);
  CHECK(report.pairs.size() == 6 * 7 / 2);
  for (const auto& p : report.pairs) {
    if (p.i == p.j) {
      CHECK(p.sqdist_sampled == 0.0);
      CHECK(p.sqdist_deviation() == 0.0);
    }
  }
  CHECK(distance_check(reference, reference).max_kernel_deviation == 0.0);

  auto other = sampled;
  other.graph_ids[0] = "renamed";
  CHECK_THROWS_AS(distance_check(other, reference), std::invalid_argument);
  CHECK_THROWS_AS(distance_check(gram(embed(graphs, pool, EmbeddingMode::log1p)), reference), std::invalid_argument);
}

TEST_CASE("kernel variance shrinks with the bank size") {
  Rng rng(26);
  const std::vector<Graph> pair{random_graph(8, 0.4, rng), random_graph(8, 0.6, rng)};
  const auto variance = [&](std::size_t l, std::uint64_t seed_base) {
    std::vector<double> values;
    for (std::uint64_t s = 0; s < 20; ++s) {
      SamplerConfig cfg;
      cfg.n = 8;
      cfg.seed = seed_base + s;
      values.push_back(gram(embed(pair, sample_bank(cfg, l), EmbeddingMode::density)).at(0, 1));
    }
    double mean = 0, sq = 0;
    for (double v : values) mean += v;
    mean /= 20;
    for (double v : values) sq += (v - mean) * (v - mean);
    return sq / 19;
  };
  CHECK(variance(400, 1000) < variance(50, 2000));
}

TEST_CASE("distinguishability report") {
  const Graph c3 = generate(Family::cycle, 3);
  const Graph c6 = generate(Family::cycle, 6);
  const auto bank = small_bank(6, 60, 27);

  const auto same = embed({c6, c6, c6}, bank, EmbeddingMode::hom);
  const auto none = distinguishability_report(same);
  CHECK(none.pairs_total == 3);
  CHECK(none.pairs_distinguished == 0);

  SamplerConfig forest;
  forest.n = 6;
  forest.treewidth_cap = 1;
  forest.seed = 28;
  const auto forests = sample_bank(forest, 200);
  for (const auto& p : forests.patterns) {
    CHECK(hom_bruteforce(p.pattern, c6) == hom_bruteforce(p.pattern, disjoint_union(c3, c3)));
  }
  CHECK(distinguishability_report(embed({c6, disjoint_union(c3, c3)}, forests, EmbeddingMode::hom))
            .pairs_distinguished == 0);

  const auto mixed = embed({c6, disjoint_union(c3, c3), c6, generate(Family::path, 6)}, bank, EmbeddingMode::hom);
  const std::vector<std::string> labels{"a", "b", "a", "c"};
  const auto r = distinguishability_report(mixed, labels);
  CHECK(r.pairs_total == 6);
  CHECK(r.by_class_pair.at({"a", "a"}).pairs == 1);
  CHECK(r.by_class_pair.at({"a", "a"}).distinguished == 0);
  CHECK(r.by_class_pair.at({"a", "c"}).pairs == 2);
  CHECK(r.by_class_pair.at({"a", "c"}).distinguished == 2);
  CHECK_THROWS_AS(distinguishability_report(mixed, std::vector<std::string>{"a"}), std::invalid_argument);

  const std::string json = report_to_json(r);
  CHECK(json.find("\"pairs_total\": 6") != std::string::npos);
  CHECK(json.find("\"a|c\"") != std::string::npos);
  CHECK(json.find("\"mode\": \"hom\"") != std::string::npos);
  CHECK(json.find("\"tolerance\"") != std::string::npos);

  // Real modes compare with a tolerance.
  EmbeddingMatrix close;
  close.graph_ids = {"x", "y"};
  close.pattern_ordinals = {0};
  close.mode = EmbeddingMode::log1p;
  close.real = {1.0, 1.0 + 1e-10};
  CHECK(distinguishability_report(close).pairs_distinguished == 0);
  close.real[1] = 1.0 + 1e-8;
  CHECK(distinguishability_report(close).pairs_distinguished == 1);
}

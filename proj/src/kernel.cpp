#include "homembed/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "homembed/random.hpp"

namespace homembed {
namespace {

void check_range(double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("hoeffding: eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("hoeffding: delta must lie in (0, 1)");
}

std::uint64_t smallest_l(double eps, double delta, double log_size) {
  const double estimate = std::ceil((2.0 * log_size + std::log(2.0 / delta)) / (2.0 * eps * eps));
  if (!std::isfinite(estimate) || estimate >= 9.0e18) throw std::domain_error("hoeffding: sample count overflows");
  auto l = static_cast<std::uint64_t>(std::max(estimate, 1.0));
  while (l > 1 && hoeffding_satisfied(eps, delta, log_size, l - 1)) --l;
  while (!hoeffding_satisfied(eps, delta, log_size, l)) ++l;
  return l;
}

std::string format_real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::dot: return "dot";
    case KernelKind::averaged_density: return "averaged-density";
    case KernelKind::min_kernel: return "min-kernel";
  }
  return "dot";
}

GramMatrix gram(const EmbeddingMatrix& emb) {
  GramMatrix g;
  g.graph_ids = emb.graph_ids;
  g.kind = emb.mode == EmbeddingMode::density     ? KernelKind::averaged_density
           : emb.mode == EmbeddingMode::truncated ? KernelKind::min_kernel
                                                  : KernelKind::dot;
  const std::size_t n = emb.rows(), cols = emb.cols();
  g.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double value = 0.0;
      if (is_exact(emb.mode)) {
        HomCount sum = 0;
        for (std::size_t c = 0; c < cols; ++c) sum += emb.exact_at(i, c) * emb.exact_at(j, c);
        if (sum > HomCount(1) << 53) {
          throw std::overflow_error("gram: exact kernel entry (" + emb.graph_ids[i] + ", " + emb.graph_ids[j] +
                                    ") exceeds 2^53; use a density or log1p embedding");
        }
        value = sum.convert_to<double>();
      } else {
        for (std::size_t c = 0; c < cols; ++c) value += emb.real_at(i, c) * emb.real_at(j, c);
      }
      g.values[i * n + j] = value;
      g.values[j * n + i] = value;
    }
  }
  return g;
}

HomCount min_kernel(const Graph& g, const Graph& h, const PatternBank& bank) {
  const std::size_t limit = std::min(g.vertex_count(), h.vertex_count());
  HomCount sum = 0;
  for (const auto& p : bank.patterns) {
    if (p.pattern.vertex_count() > limit) continue;
    const CountingPlan plan(p.pattern, p.decomposition);
    sum += plan.count(g) * plan.count(h);
  }
  return sum;
}

HomCount min_kernel(const EmbeddingMatrix& truncated, std::size_t i, std::size_t j) {
  if (truncated.mode != EmbeddingMode::truncated) {
    throw std::invalid_argument("min_kernel: embedding must be in truncated mode");
  }
  if (i >= truncated.rows() || j >= truncated.rows()) throw std::out_of_range("min_kernel: row index out of range");
  HomCount sum = 0;
  for (std::size_t c = 0; c < truncated.cols(); ++c) sum += truncated.exact_at(i, c) * truncated.exact_at(j, c);
  return sum;
}

double squared_distance(const GramMatrix& gram, std::size_t i, std::size_t j) {
  return gram.at(i, i) - 2.0 * gram.at(i, j) + gram.at(j, j);
}

bool hoeffding_satisfied(double eps, double delta, double log_sample_size, std::uint64_t l) {
  return std::log(2.0) + 2.0 * log_sample_size - 2.0 * eps * eps * static_cast<double>(l) <= std::log(delta);
}

std::uint64_t hoeffding_samples(double eps, double delta, std::uint64_t sample_size) {
  check_range(eps, delta);
  if (sample_size < 1) throw std::domain_error("hoeffding: sample size must be positive");
  return smallest_l(eps, delta, std::log(static_cast<double>(sample_size)));
}

std::uint64_t hoeffding_samples_all(double eps, double delta, std::uint64_t n) {
  check_range(eps, delta);
  if (n < 1) throw std::domain_error("hoeffding: n must be positive");
  const double nd = static_cast<double>(n);
  return smallest_l(eps, delta, nd * nd * std::log(2.0));
}

PatternBank resample_bank(const PatternBank& pool, std::size_t count, std::uint64_t seed) {
  if (pool.size() == 0) throw std::invalid_argument("resample_bank: empty pool");
  if (count < 1) throw std::invalid_argument("resample_bank: count must be positive");
  PatternBank bank{pool.config, {}};
  bank.config.seed = seed;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    bank.patterns.push_back(pool.patterns[rng.uniform_index(pool.size())]);
    bank.patterns.back().ordinal = i;
  }
  return bank;
}

double PairDeviation::kernel_deviation() const { return std::abs(kernel_sampled - kernel_reference); }
double PairDeviation::sqdist_deviation() const { return std::abs(sqdist_sampled - sqdist_reference); }

DeviationReport distance_check(const GramMatrix& sampled, const GramMatrix& reference) {
  if (sampled.graph_ids != reference.graph_ids) {
    throw std::invalid_argument("distance_check: Gram matrices cover different graphs");
  }
  if (sampled.kind != reference.kind) throw std::invalid_argument("distance_check: kernel kinds differ");
  DeviationReport report;
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    for (std::size_t j = i; j < sampled.size(); ++j) {
      PairDeviation d{i, j, sampled.at(i, j), reference.at(i, j), squared_distance(sampled, i, j),
                      squared_distance(reference, i, j)};
      report.max_kernel_deviation = std::max(report.max_kernel_deviation, d.kernel_deviation());
      report.max_sqdist_deviation = std::max(report.max_sqdist_deviation, d.sqdist_deviation());
      report.pairs.push_back(d);
    }
  }
  return report;
}

DistinguishReport distinguishability_report(const EmbeddingMatrix& emb,
                                            const std::optional<std::vector<std::string>>& labels, double tolerance) {
  if (labels && labels->size() != emb.rows()) {
    throw std::invalid_argument("distinguish: " + std::to_string(labels->size()) + " labels for " +
                                std::to_string(emb.rows()) + " rows");
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("distinguish: tolerance must be non-negative");

  DistinguishReport report;
  report.mode = emb.mode;
  report.tolerance = is_exact(emb.mode) ? 0.0 : tolerance;
  const auto differ = [&](std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < emb.cols(); ++c) {
      if (is_exact(emb.mode) ? emb.exact_at(a, c) != emb.exact_at(b, c)
                             : !(std::abs(emb.real_at(a, c) - emb.real_at(b, c)) <= tolerance)) {
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < emb.rows(); ++i) {
    for (std::size_t j = i + 1; j < emb.rows(); ++j) {
      const bool d = differ(i, j);
      ++report.pairs_total;
      report.pairs_distinguished += d;
      if (labels) {
        auto key = std::minmax((*labels)[i], (*labels)[j]);
        auto& stats = report.by_class_pair[{key.first, key.second}];
        ++stats.pairs;
        stats.distinguished += d;
      }
    }
  }
  return report;
}

std::string report_to_json(const DistinguishReport& report) {
  nlohmann::ordered_json j;
  j["pairs_total"] = report.pairs_total;
  j["pairs_distinguished"] = report.pairs_distinguished;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto& [key, stats] : report.by_class_pair) {
    classes[key.first + "|" + key.second] = {
        {"pairs", stats.pairs},
        {"distinguished", stats.distinguished},
        {"rate", static_cast<double>(stats.distinguished) / static_cast<double>(stats.pairs)}};
  }
  j["by_class_pair"] = std::move(classes);
  j["mode"] = std::string(to_string(report.mode));
  j["tolerance"] = report.tolerance;
  return j.dump(1) + "\n";
}

void write_gram_csv(std::ostream& out, const GramMatrix& gram) {
  out << "graph_id";
  for (const auto& id : gram.graph_ids) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < gram.size(); ++i) {
    out << gram.graph_ids[i];
    for (std::size_t j = 0; j < gram.size(); ++j) out << ',' << format_real(gram.at(i, j));
    out << '\n';
  }
}

}  // namespace homembed

#include "homembed/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace homembed {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool is_integer_token(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(EmbeddingMode mode) {
  switch (mode) {
    case EmbeddingMode::hom: return "hom";
    case EmbeddingMode::density: return "density";
    case EmbeddingMode::truncated: return "truncated";
    case EmbeddingMode::log1p: return "log1p";
    case EmbeddingMode::standardized: return "standardized";
  }
  return "hom";
}

EmbeddingMode parse_embedding_mode(std::string_view name) {
  for (auto m : {EmbeddingMode::hom, EmbeddingMode::density, EmbeddingMode::truncated, EmbeddingMode::log1p,
                 EmbeddingMode::standardized}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown embedding mode '" + std::string(name) + "'");
}

std::vector<HomCount> count_matrix(const std::vector<Graph>& graphs, const PatternBank& bank, unsigned threads,
                                   bool truncate) {
  std::vector<CountingPlan> plans;
  plans.reserve(bank.size());
  for (const auto& p : bank.patterns) plans.emplace_back(p.pattern, p.decomposition);

  const std::size_t cols = plans.size();
  std::vector<HomCount> counts(graphs.size() * cols);
  parallel_for(counts.size(), threads, [&](std::size_t cell) {
    const auto& g = graphs[cell / cols];
    const auto& plan = plans[cell % cols];
    if (truncate && plan.pattern().vertex_count() > g.vertex_count()) return;
    counts[cell] = plan.count(g);
  });
  return counts;
}

EmbeddingMatrix embed(const std::vector<Graph>& graphs, const PatternBank& bank, EmbeddingMode mode,
                      unsigned threads, std::vector<std::string> ids) {
  if (bank.size() == 0) throw std::invalid_argument("embed: pattern bank is empty");
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].empty()) throw std::invalid_argument("embed: graph " + std::to_string(i) + " has no vertices");
  }
  if (ids.empty()) {
    for (std::size_t i = 0; i < graphs.size(); ++i) ids.push_back(std::to_string(i));
  }
  if (ids.size() != graphs.size()) throw std::invalid_argument("embed: graph id count does not match graphs");

  EmbeddingMatrix emb;
  emb.graph_ids = std::move(ids);
  emb.mode = mode;
  for (const auto& p : bank.patterns) emb.pattern_ordinals.push_back(p.ordinal);

  auto counts = count_matrix(graphs, bank, threads, mode == EmbeddingMode::truncated);
  const std::size_t rows = graphs.size(), cols = bank.size();

  switch (mode) {
    case EmbeddingMode::hom:
    case EmbeddingMode::truncated:
      emb.exact = std::move(counts);
      break;
    case EmbeddingMode::density:
      emb.column_scale = 1.0 / std::sqrt(static_cast<double>(cols));
      emb.real.resize(counts.size());
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          emb.real[i * cols + j] =
              hom_density(bank.patterns[j].pattern, graphs[i], counts[i * cols + j]) * emb.column_scale;
        }
      }
      break;
    case EmbeddingMode::log1p:
      emb.real.resize(counts.size());
      for (std::size_t c = 0; c < counts.size(); ++c) emb.real[c] = log1p_count(counts[c]);
      break;
    case EmbeddingMode::standardized:
      emb.real.assign(counts.size(), 0.0);
      for (std::size_t j = 0; j < cols; ++j) {
        std::vector<double> column(rows);
        for (std::size_t i = 0; i < rows; ++i) column[i] = to_double(counts[i * cols + j]);
        double mean = 0.0;
        for (double x : column) mean += x;
        mean /= static_cast<double>(rows);
        double var = 0.0;
        for (double x : column) var += (x - mean) * (x - mean);
        const double sd = std::sqrt(var / static_cast<double>(rows));
        if (!(sd >= kStdFloor) || !std::isfinite(sd)) continue;
        for (std::size_t i = 0; i < rows; ++i) emb.real[i * cols + j] = (column[i] - mean) / sd;
      }
      break;
  }
  return emb;
}

void write_embedding_csv(std::ostream& out, const EmbeddingMatrix& emb) {
  out << "graph_id";
  for (std::size_t j = 0; j < emb.cols(); ++j) out << ",p" << j;
  out << '\n';
  char buffer[32];
  for (std::size_t i = 0; i < emb.rows(); ++i) {
    out << emb.graph_ids[i];
    for (std::size_t j = 0; j < emb.cols(); ++j) {
      if (is_exact(emb.mode)) {
        out << ',' << emb.exact_at(i, j).str();
      } else {
        std::snprintf(buffer, sizeof buffer, "%.17g", emb.real_at(i, j));
        out << ',' << buffer;
      }
    }
    out << '\n';
  }
}

EmbeddingMatrix read_embedding_csv(std::istream& in, std::optional<EmbeddingMode> mode) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("embedding CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "graph_id") throw std::invalid_argument("embedding CSV: header must start with graph_id");

  EmbeddingMatrix emb;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (header[j] != "p" + std::to_string(j - 1)) {
      throw std::invalid_argument("embedding CSV: unexpected column '" + header[j] + "'");
    }
    emb.pattern_ordinals.push_back(j - 1);
  }

  std::vector<std::string> cells;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split_csv(line);
    if (row.size() != header.size()) {
      throw std::invalid_argument("embedding CSV: line " + std::to_string(number) + " has " +
                                  std::to_string(row.size()) + " cells, expected " + std::to_string(header.size()));
    }
    emb.graph_ids.push_back(row[0]);
    cells.insert(cells.end(), std::make_move_iterator(row.begin() + 1), std::make_move_iterator(row.end()));
  }

  const bool integers = std::all_of(cells.begin(), cells.end(), is_integer_token);
  emb.mode = mode.value_or(integers ? EmbeddingMode::hom : EmbeddingMode::log1p);
  if (is_exact(emb.mode)) {
    if (!integers) throw std::invalid_argument("embedding CSV: exact mode requires integer cells");
    emb.exact.reserve(cells.size());
    for (const auto& c : cells) emb.exact.emplace_back(c);
  } else {
    emb.real.reserve(cells.size());
    for (const auto& c : cells) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size() || c.empty()) throw std::invalid_argument("embedding CSV: bad number '" + c + "'");
      emb.real.push_back(value);
    }
    if (emb.mode == EmbeddingMode::density && emb.cols() > 0) {
      emb.column_scale = 1.0 / std::sqrt(static_cast<double>(emb.cols()));
    }
  }
  return emb;
}

}  // namespace homembed

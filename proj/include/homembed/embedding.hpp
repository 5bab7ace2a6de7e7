#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homembed/graph.hpp"
#include "homembed/hom_count.hpp"
#include "homembed/sampler.hpp"

namespace homembed {

enum class EmbeddingMode {
  hom,           // hom(F_j, G_i)
  density,       // t(F_j, G_i) / sqrt(l)
  truncated,     // hom_{v(G_i)}(F_j, G_i)
  log1p,         // ln(1 + hom)
  standardized,  // hom, then per-column mean 0 / std 1 over the embedded graphs
};

std::string_view to_string(EmbeddingMode mode);
EmbeddingMode parse_embedding_mode(std::string_view name);

/// True for hom and truncated, whose entries are exact integers.
constexpr bool is_exact(EmbeddingMode mode) noexcept {
  return mode == EmbeddingMode::hom || mode == EmbeddingMode::truncated;
}

/// Columns whose standard deviation falls below this become all-zero.
inline constexpr double kStdFloor = 1e-12;

/// Rows are graphs, columns are bank patterns. Exactly one of `exact` and
/// `real` is populated (row-major), depending on the mode.
struct EmbeddingMatrix {
  std::vector<std::string> graph_ids;
  std::vector<std::size_t> pattern_ordinals;
  EmbeddingMode mode = EmbeddingMode::hom;
  double column_scale = 1.0;  // 1/sqrt(l) in density mode, applied once
  std::vector<HomCount> exact;
  std::vector<double> real;

  std::size_t rows() const noexcept { return graph_ids.size(); }
  std::size_t cols() const noexcept { return pattern_ordinals.size(); }

  const HomCount& exact_at(std::size_t i, std::size_t j) const { return exact[i * cols() + j]; }
  double real_at(std::size_t i, std::size_t j) const { return real[i * cols() + j]; }
};

/// hom(F_j, G_i) for every cell, `threads` workers over cells. Entries are
/// independent of the thread count. With `truncate` set, cells with
/// v(F) > v(G) are zero and not counted.
std::vector<HomCount> count_matrix(const std::vector<Graph>& graphs, const PatternBank& bank,
                                   unsigned threads = 1, bool truncate = false);

/// Graph ids default to "0", "1", ... when `ids` is empty. Throws
/// std::invalid_argument for an empty bank, an empty graph, or a pattern
/// whose stored decomposition does not validate.
EmbeddingMatrix embed(const std::vector<Graph>& graphs, const PatternBank& bank, EmbeddingMode mode,
                      unsigned threads = 1, std::vector<std::string> ids = {});

/// Header "graph_id,p0,...,p{l-1}"; integers verbatim, reals as %.17g.
void write_embedding_csv(std::ostream& out, const EmbeddingMatrix& emb);

/// Reads the CSV written above. Exact modes parse integers of any length.
/// Without a mode, all-integer files read as hom and anything else as
/// log1p (a real mode carrying no density scaling claim).
EmbeddingMatrix read_embedding_csv(std::istream& in, std::optional<EmbeddingMode> mode = std::nullopt);

}  // namespace homembed

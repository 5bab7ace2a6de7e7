#include "homembed/graph6.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace homembed {
namespace {

constexpr int kBias = 63;
constexpr char kMaxSingle = 126;  // '~' introduces a multi-byte size
constexpr std::size_t kMaxVertices = std::size_t{1} << 24;
constexpr std::string_view kHeader = ">>graph6<<";

int sextet(std::string_view line, std::size_t pos) {
  const auto c = static_cast<unsigned char>(line[pos]);
  if (c < kBias || c > kMaxSingle) throw Graph6Error("character out of range", pos);
  return c - kBias;
}

void put_size(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(kMaxSingle);
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 0x3F) + kBias));
    }
  } else {
    out.append(2, kMaxSingle);
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 0x3F) + kBias));
    }
  }
}

}  // namespace

Graph parse_graph6(std::string_view line) {
  if (line.empty()) throw Graph6Error("empty graph6 string", 0);

  std::size_t pos = 0;
  std::size_t n = 0;
  auto read_digits = [&](int count) {
    std::size_t value = 0;
    for (int i = 0; i < count; ++i, ++pos) {
      if (pos >= line.size()) throw Graph6Error("truncated size header", pos);
      value = (value << 6) | static_cast<std::size_t>(sextet(line, pos));
    }
    return value;
  };

  if (line[0] != kMaxSingle) {
    n = static_cast<std::size_t>(sextet(line, 0));
    pos = 1;
  } else if (line.size() > 1 && line[1] == kMaxSingle) {
    pos = 2;
    n = read_digits(6);
  } else {
    pos = 1;
    n = read_digits(3);
  }

  if (n > kMaxVertices) throw Graph6Error("graph too large", 0);
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t body = (bits + 5) / 6;
  if (line.size() < pos + body) throw Graph6Error("truncated adjacency data", line.size());
  if (line.size() > pos + body) throw Graph6Error("trailing characters", pos + body);

  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const int word = sextet(line, pos + bit / 6);
      if ((word >> (5 - bit % 6)) & 1) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return Graph(n, std::move(edges));
}

std::string write_graph6(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::string out;
  put_size(out, n);
  int word = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      word = (word << 1) | (g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(word + kBias));
        word = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((word << (6 - filled)) + kBias));
  return out;
}

std::vector<Graph> read_graph6(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    std::string_view view = line;
    if (number == 1 && view.starts_with(kHeader)) view.remove_prefix(kHeader.size());
    if (view.empty()) continue;
    try {
      graphs.push_back(parse_graph6(view));
    } catch (const std::exception& e) {
      throw Graph6FileError(e.what(), number);
    }
  }
  return graphs;
}

std::vector<Graph> read_graph6_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_graph6(in);
}

void write_graph6(std::ostream& out, const std::vector<Graph>& graphs) {
  for (const auto& g : graphs) out << write_graph6(g) << '\n';
}

}  // namespace homembed

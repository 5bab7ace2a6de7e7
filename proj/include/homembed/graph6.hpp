#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "homembed/graph.hpp"

namespace homembed {

/// Malformed graph6 input. `offset()` is the 0-based byte position of the
/// first offending character within the line.
class Graph6Error : public std::runtime_error {
public:
  Graph6Error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Decodes a single graph6 line (no header, no trailing newline).
Graph parse_graph6(std::string_view line);

/// Encodes the upper adjacency triangle column by column, 6 bits per byte.
std::string write_graph6(const Graph& g);

/// A graph6 line that failed to parse; `line` is 1-based.
class Graph6FileError : public std::runtime_error {
public:
  Graph6FileError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// One graph per line; blank lines and a leading ">>graph6<<" header are skipped.
std::vector<Graph> read_graph6(std::istream& in);
std::vector<Graph> read_graph6_file(const std::filesystem::path& path);

void write_graph6(std::ostream& out, const std::vector<Graph>& graphs);

}  // namespace homembed

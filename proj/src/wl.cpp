#include "homembed/wl.hpp"

#include <algorithm>
#include <cstdio>

namespace homembed {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void mix(std::uint64_t& h, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (word >> (8 * byte)) & 0xff;
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t ColorSignature::hash() const {
  std::uint64_t h = kFnvOffset;
  mix(h, rounds.size());
  for (const auto& round : rounds) {
    mix(h, round.size());
    for (const auto& [tuple, count] : round) {
      mix(h, tuple.size());
      for (auto c : tuple) mix(h, c);
      mix(h, count);
    }
  }
  return h;
}

std::string ColorSignature::hex() const {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash()));
  return buffer;
}

ColorSignature wl1_signature(const Graph& g) {
  const std::size_t n = g.vertex_count();
  ColorSignature sig;
  std::vector<std::uint64_t> color(n);
  std::vector<ColorSignature::Tuple> tuples(n);
  for (Vertex v = 0; v < n; ++v) tuples[v] = {g.degree(v)};

  std::size_t classes = 0;
  for (std::size_t round = 0; round <= n; ++round) {
    std::vector<ColorSignature::Tuple> distinct = tuples;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    ColorSignature::Round entry;
    entry.reserve(distinct.size());
    for (auto& t : distinct) entry.emplace_back(t, 0);
    for (Vertex v = 0; v < n; ++v) {
      const auto it = std::lower_bound(distinct.begin(), distinct.end(), tuples[v]);
      color[v] = static_cast<std::uint64_t>(it - distinct.begin());
      ++entry[color[v]].second;
    }
    sig.rounds.push_back(std::move(entry));

    if (round > 0 && distinct.size() == classes) break;
    classes = distinct.size();

    for (Vertex v = 0; v < n; ++v) {
      auto& t = tuples[v];
      t.assign(1, color[v]);
      for (Vertex u : g.neighbors(v)) t.push_back(color[u]);
      std::sort(t.begin() + 1, t.end());
    }
  }
  return sig;
}

}  // namespace homembed

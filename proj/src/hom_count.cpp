#include "homembed/hom_count.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace homembed {
namespace {

using u128 = unsigned __int128;
namespace mp = boost::multiprecision;

// Tables with at most this many assignments are stored densely.
constexpr std::uint64_t kDenseEntries = std::uint64_t{1} << 16;

template <class T>
struct Table {
  bool dense = true;
  std::vector<T> values;
  std::vector<std::uint64_t> keys;  // sparse only, ascending, parallel to values

  template <class Fn>
  void for_each(Fn&& fn) const {
    if (dense) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0) fn(static_cast<std::uint64_t>(i), values[i]);
      }
    } else {
      for (std::size_t i = 0; i < keys.size(); ++i) fn(keys[i], values[i]);
    }
  }

  const T* find(std::uint64_t key) const {
    if (dense) return key < values.size() && values[key] != 0 ? &values[key] : nullptr;
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return nullptr;
    return &values[static_cast<std::size_t>(it - keys.begin())];
  }
};

template <class T>
class Builder {
public:
  explicit Builder(std::uint64_t entries) : dense_(entries <= kDenseEntries) {
    if (dense_) values_.assign(static_cast<std::size_t>(entries), T{0});
  }

  void add(std::uint64_t key, const T& value) {
    if (dense_) {
      values_[key] += value;
    } else {
      pending_.emplace_back(key, value);
    }
  }

  Table<T> finish() {
    Table<T> t;
    t.dense = dense_;
    if (dense_) {
      t.values = std::move(values_);
      return t;
    }
    std::sort(pending_.begin(), pending_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, value] : pending_) {
      if (!t.keys.empty() && t.keys.back() == key) {
        t.values.back() += value;
      } else {
        t.keys.push_back(key);
        t.values.push_back(std::move(value));
      }
    }
    pending_.clear();
    return t;
  }

private:
  bool dense_;
  std::vector<T> values_;
  std::vector<std::pair<std::uint64_t, T>> pending_;
};

HomCount widen(std::uint64_t x) { return HomCount{x}; }
HomCount widen(u128 x) {
  HomCount r{static_cast<std::uint64_t>(x >> 64)};
  r <<= 64;
  r |= HomCount{static_cast<std::uint64_t>(x)};
  return r;
}
HomCount widen(const HomCount& x) { return x; }

}  // namespace

CountingPlan::CountingPlan(const Graph& pattern, const TreeDecomposition& td) : pattern_(pattern) {
  if (auto check = validate(pattern, td); !check) {
    throw std::invalid_argument("invalid tree decomposition: " + check.diagnostic);
  }
  nice_ = make_nice(td);
  prepare();
}

CountingPlan::CountingPlan(const Graph& pattern, NiceTreeDecomposition ntd)
    : pattern_(pattern), nice_(std::move(ntd)) {
  if (auto check = validate_nice(nice_); !check) {
    throw std::invalid_argument("invalid nice decomposition: " + check.diagnostic);
  }
  if (auto check = validate(pattern_, underlying(nice_)); !check) {
    throw std::invalid_argument("invalid nice decomposition: " + check.diagnostic);
  }
  prepare();
}

void CountingPlan::prepare() {
  const auto& nodes = nice_.nodes;
  steps_.resize(nodes.size());
  extents_.resize(nodes.size());
  std::vector<std::vector<Vertex>> covered(nodes.size());
  std::vector<std::size_t> root(pattern_.vertex_count());
  std::vector<char> member(pattern_.vertex_count(), 0);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    Step& step = steps_[i];
    step.kind = node.kind;
    step.bag_size = node.bag.size();
    max_bag_ = std::max(max_bag_, node.bag.size());
    if (!node.children.empty()) step.first = node.children[0];
    if (node.children.size() > 1) step.second = node.children[1];

    const auto digit = [](const Bag& bag, Vertex v) {
      return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    };
    switch (node.kind) {
      case NodeKind::leaf:
        break;
      case NodeKind::introduce: {
        step.position = digit(node.bag, node.vertex);
        const auto& child = nodes[step.first].bag;
        for (Vertex w : pattern_.neighbors(node.vertex)) {
          if (std::binary_search(child.begin(), child.end(), w)) step.anchors.push_back(digit(child, w));
        }
        covered[i] = covered[step.first];
        covered[i].insert(std::upper_bound(covered[i].begin(), covered[i].end(), node.vertex), node.vertex);
        break;
      }
      case NodeKind::forget:
        step.position = digit(nodes[step.first].bag, node.vertex);
        covered[i] = covered[step.first];
        break;
      case NodeKind::join:
        std::set_union(covered[step.first].begin(), covered[step.first].end(),
                       covered[step.second].begin(), covered[step.second].end(),
                       std::back_inserter(covered[i]));
        break;
    }

    // Components of F[V_t].
    const auto& vs = covered[i];
    for (Vertex v : vs) {
      member[v] = 1;
      root[v] = v;
    }
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    std::size_t components = vs.size();
    for (Vertex v : vs) {
      for (Vertex w : pattern_.neighbors(v)) {
        if (w < v || !member[w]) continue;
        auto a = find(v), b = find(w);
        if (a != b) {
          root[a] = b;
          --components;
        }
      }
    }
    for (Vertex v : vs) member[v] = 0;
    extents_[i] = {components, vs.size()};
  }
}

double CountingPlan::bound_bits(const Graph& target) const {
  const double log_n = target.vertex_count() > 1 ? std::log2(static_cast<double>(target.vertex_count())) : 0.0;
  const double log_d = target.max_degree() > 1 ? std::log2(static_cast<double>(target.max_degree())) : 0.0;
  double bits = 0.0;
  for (const auto& [components, vertices] : extents_) {
    bits = std::max(bits, static_cast<double>(components) * log_n +
                              static_cast<double>(vertices - components) * log_d);
  }
  return bits;
}

HomCount CountingPlan::count(const Graph& target) const {
  const double bits = bound_bits(target);
  if (bits < 63.0) return run<std::uint64_t>(target);
  if (bits < 127.0) return run<u128>(target);
  return run<HomCount>(target);
}

template <class T>
HomCount CountingPlan::run(const Graph& target) const {
  const std::uint64_t n = target.vertex_count();
  std::vector<std::uint64_t> power(max_bag_ + 2, 0);
  u128 p = 1;
  for (std::size_t i = 0; i <= max_bag_; ++i) {
    if (p > std::numeric_limits<std::uint64_t>::max()) {
      throw std::length_error("bag assignments of width " + std::to_string(max_bag_) +
                              " into a graph of " + std::to_string(n) + " vertices exceed 64-bit keys");
    }
    power[i] = static_cast<std::uint64_t>(p);
    p *= n;
  }
  const auto entries = [&](std::size_t bag_size) { return power[bag_size]; };
  const auto digit_of = [&](std::uint64_t key, std::size_t pos) { return (key / power[pos]) % n; };

  std::vector<Table<T>> tables(steps_.size());
  std::vector<Vertex> images;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    const Step& step = steps_[i];
    switch (step.kind) {
      case NodeKind::leaf:
        tables[i].values = {T{1}};
        break;

      case NodeKind::introduce: {
        Table<T> child = std::move(tables[step.first]);
        Builder<T> out(entries(step.bag_size));
        const std::uint64_t stride = power[step.position];
        child.for_each([&](std::uint64_t key, const T& value) {
          const std::uint64_t low = key % stride;
          const std::uint64_t base = low + (key - low) * n;
          if (step.anchors.empty()) {
            for (std::uint64_t u = 0; u < n; ++u) out.add(base + u * stride, value);
            return;
          }
          images.clear();
          for (auto a : step.anchors) images.push_back(static_cast<Vertex>(digit_of(key, a)));
          for (Vertex u : target.neighbors(images.front())) {
            bool ok = true;
            for (std::size_t j = 1; j < images.size() && ok; ++j) ok = target.adjacent(u, images[j]);
            if (ok) out.add(base + u * stride, value);
          }
        });
        tables[i] = out.finish();
        break;
      }

      case NodeKind::forget: {
        Table<T> child = std::move(tables[step.first]);
        Builder<T> out(entries(step.bag_size));
        const std::uint64_t stride = power[step.position];
        child.for_each([&](std::uint64_t key, const T& value) {
          const std::uint64_t low = key % stride;
          out.add(low + (key / stride / n) * stride, value);
        });
        tables[i] = out.finish();
        break;
      }

      case NodeKind::join: {
        Table<T> a = std::move(tables[step.first]);
        Table<T> b = std::move(tables[step.second]);
        Table<T> out;
        out.dense = a.dense;
        if (a.dense) {
          out.values.assign(a.values.size(), T{0});
          for (std::size_t k = 0; k < a.values.size(); ++k) {
            if (a.values[k] != 0 && b.values[k] != 0) out.values[k] = a.values[k] * b.values[k];
          }
        } else {
          if (b.keys.size() < a.keys.size()) std::swap(a, b);
          a.for_each([&](std::uint64_t key, const T& value) {
            if (const T* other = b.find(key)) {
              out.keys.push_back(key);
              out.values.push_back(value * *other);
            }
          });
        }
        tables[i] = std::move(out);
        break;
      }
    }
  }

  const auto& top = tables.back();
  const T* answer = top.find(0);
  return answer ? widen(*answer) : HomCount{0};
}

HomCount hom_bruteforce(const Graph& pattern, const Graph& target) {
  const std::size_t k = pattern.vertex_count();
  const std::size_t n = target.vertex_count();
  if (k == 0) return HomCount{1};
  if (std::pow(static_cast<double>(n), static_cast<double>(k)) > kBruteForceMapLimit) {
    throw std::domain_error("hom_bruteforce: v(G)^v(F) exceeds the enumeration limit");
  }
  // earlier[v]: pattern neighbours of v with a smaller index.
  std::vector<std::vector<Vertex>> earlier(k);
  for (const auto& [u, v] : pattern.edges()) earlier[v].push_back(u);

  std::vector<Vertex> image(k, 0);
  std::uint64_t total = 0;
  std::size_t depth = 0;
  std::vector<std::uint64_t> next(k, 0);
  // Iterative depth-first enumeration of all maps, pruned on violated edges.
  while (true) {
    if (next[depth] == n) {
      if (depth == 0) break;
      next[depth] = 0;
      --depth;
      continue;
    }
    const auto u = static_cast<Vertex>(next[depth]++);
    bool ok = true;
    for (Vertex w : earlier[depth]) {
      if (!target.adjacent(image[w], u)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    image[depth] = u;
    if (depth + 1 == k) {
      ++total;
    } else {
      ++depth;
    }
  }
  return HomCount{total};
}

HomCount hom_dp(const Graph& pattern, const NiceTreeDecomposition& ntd, const Graph& target) {
  return CountingPlan(pattern, ntd).count(target);
}

HomCount hom_dp(const Graph& pattern, const TreeDecomposition& td, const Graph& target) {
  return CountingPlan(pattern, td).count(target);
}

double hom_density(const Graph& pattern, const Graph& target, const HomCount& count) {
  if (target.vertex_count() == 0) throw std::domain_error("hom_density: target graph has no vertices");
  const HomCount maps = mp::pow(HomCount{target.vertex_count()}, static_cast<unsigned>(pattern.vertex_count()));
  return mp::cpp_rational(count, maps).convert_to<double>();
}

double log1p_count(const HomCount& count) {
  const auto top = count == 0 ? std::size_t{0} : static_cast<std::size_t>(mp::msb(count));
  if (top < 1000) return std::log1p(count.convert_to<double>());
  const auto shift = static_cast<unsigned>(top - 62);
  const double mantissa = (count >> shift).convert_to<double>();
  return std::log(mantissa) + static_cast<double>(shift) * std::log(2.0);
}

double to_double(const HomCount& count) {
  if (mp::msb(count + 1) >= 1024) return std::numeric_limits<double>::infinity();
  return count.convert_to<double>();
}

}  // namespace homembed

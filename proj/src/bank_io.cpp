#include "homembed/bank_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace homembed {
namespace {

using json = nlohmann::ordered_json;

json config_json(const SamplerConfig& c) {
  json j;
  j["n"] = c.n;
  j["d"] = c.d;
  j["lambda_mode"] = to_string(c.lambda_mode);
  j["size_mode"] = to_string(c.size_mode);
  j["vertex_keep_prob"] = c.vertex_keep_prob;
  j["edge_keep_prob"] = c.edge_keep_prob;
  j["treewidth_cap"] = c.treewidth_cap ? json(*c.treewidth_cap) : json(nullptr);
  j["seed"] = c.seed;
  return j;
}

json pattern_json(const PatternSample& p) {
  json j;
  j["ordinal"] = p.ordinal;
  j["drawn_k"] = p.drawn_k;
  j["drawn_size"] = p.drawn_size;
  j["vertices"] = p.pattern.vertex_count();
  json edges = json::array();
  for (const auto& [u, v] : p.pattern.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  json bags = json::array();
  for (const auto& bag : p.decomposition.bags) bags.push_back(bag);
  j["bags"] = std::move(bags);
  json tree = json::array();
  for (const auto& [a, b] : p.decomposition.tree_edges) tree.push_back({a, b});
  j["tree_edges"] = std::move(tree);
  return j;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("bank: missing field '") + key + "'");
  return j.at(key);
}

SamplerConfig parse_config(const json& j) {
  SamplerConfig c;
  c.n = field(j, "n").get<std::size_t>();
  c.d = field(j, "d").get<unsigned>();
  c.lambda_mode = parse_lambda_mode(field(j, "lambda_mode").get<std::string>());
  c.size_mode = parse_size_mode(field(j, "size_mode").get<std::string>());
  c.vertex_keep_prob = field(j, "vertex_keep_prob").get<double>();
  c.edge_keep_prob = field(j, "edge_keep_prob").get<double>();
  const auto& cap = field(j, "treewidth_cap");
  if (!cap.is_null()) c.treewidth_cap = cap.get<std::size_t>();
  c.seed = field(j, "seed").get<std::uint64_t>();
  return c;
}

PatternSample parse_pattern(const json& j) {
  PatternSample p;
  p.ordinal = field(j, "ordinal").get<std::size_t>();
  p.drawn_k = field(j, "drawn_k").get<std::size_t>();
  p.drawn_size = field(j, "drawn_size").get<std::size_t>();
  const auto vertices = field(j, "vertices").get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("bank: edges must be pairs");
    edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  p.pattern = Graph(vertices, std::move(edges));
  for (const auto& bag : field(j, "bags")) p.decomposition.bags.push_back(bag.get<Bag>());
  for (const auto& e : field(j, "tree_edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("bank: tree_edges must be pairs");
    p.decomposition.tree_edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return p;
}

}  // namespace

std::string bank_to_json(const PatternBank& bank) {
  json j;
  j["config"] = config_json(bank.config);
  json patterns = json::array();
  for (const auto& p : bank.patterns) patterns.push_back(pattern_json(p));
  j["patterns"] = std::move(patterns);
  return j.dump(1) + "\n";
}

PatternBank bank_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bank: malformed JSON: ") + e.what());
  }
  PatternBank bank;
  try {
    bank.config = parse_config(field(j, "config"));
    for (const auto& p : field(j, "patterns")) bank.patterns.push_back(parse_pattern(p));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bank: wrong field type: ") + e.what());
  }
  for (const auto& p : bank.patterns) {
    if (auto check = validate(p.pattern, p.decomposition); !check) {
      throw std::invalid_argument("bank: pattern " + std::to_string(p.ordinal) + ": " + check.diagnostic);
    }
  }
  return bank;
}

void write_bank(const std::filesystem::path& path, const PatternBank& bank) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bank_to_json(bank);
}

PatternBank read_bank(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return bank_from_json(buffer.str());
}

}  // namespace homembed

#pragma once

#include <filesystem>
#include <string>

#include "homembed/sampler.hpp"

namespace homembed {

/// Serializes a bank as JSON with a fixed key order:
/// {"config": {n, d, lambda_mode, size_mode, vertex_keep_prob,
///  edge_keep_prob, treewidth_cap, seed}, "patterns": [{ordinal, drawn_k,
///  drawn_size, vertices, edges, bags, tree_edges}, ...]}.
std::string bank_to_json(const PatternBank& bank);

/// Parses a bank and validates every stored decomposition against its
/// pattern; throws std::invalid_argument on malformed JSON, schema
/// violations or invalid decompositions.
PatternBank bank_from_json(const std::string& text);

void write_bank(const std::filesystem::path& path, const PatternBank& bank);
PatternBank read_bank(const std::filesystem::path& path);

}  // namespace homembed

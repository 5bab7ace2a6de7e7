#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace homembed::cli {

/// CRC-32 of a file's bytes as 8 lowercase hex digits.
std::string file_checksum(const std::filesystem::path& path);

/// Sidecar written next to every output as "<output>.manifest.json".
/// Two runs with equal inputs and flags produce manifests that differ only
/// in "wall_clock_seconds".
struct RunManifest {
  std::string subcommand;
  nlohmann::ordered_json flags = nlohmann::ordered_json::object();
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path bank;  // empty when the command reads no bank
  std::vector<std::filesystem::path> outputs;
  double wall_clock_seconds = 0;

  nlohmann::ordered_json to_json() const;
  void write_beside(const std::filesystem::path& output) const;
};

std::filesystem::path manifest_path(const std::filesystem::path& output);

inline constexpr const char* kToolVersion = "homembed 1.0.0";

}  // namespace homembed::cli

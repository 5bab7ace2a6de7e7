#include "manifest.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <boost/crc.hpp>

namespace homembed::cli {

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  boost::crc_32_type crc;
  std::array<char, 1 << 16> buffer{};
  while (in.read(buffer.data(), buffer.size()) || in.gcount() > 0) {
    crc.process_bytes(buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", static_cast<unsigned>(crc.checksum()));
  return hex;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return output.string() + ".manifest.json";
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["flags"] = flags;
  j["bank_checksum"] = bank.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(file_checksum(bank));
  auto checksums = [](const std::vector<std::filesystem::path>& paths) {
    nlohmann::ordered_json files = nlohmann::ordered_json::object();
    for (const auto& p : paths) files[p.string()] = file_checksum(p);
    return files;
  };
  j["input_checksums"] = checksums(inputs);
  j["output_checksums"] = checksums(outputs);
  j["tool_version"] = kToolVersion;
  j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

void RunManifest::write_beside(const std::filesystem::path& output) const {
  const auto path = manifest_path(output);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(1) << '\n';
}

}  // namespace homembed::cli

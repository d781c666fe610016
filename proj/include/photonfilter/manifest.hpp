#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace photonfilter {

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::uintmax_t bytes = 0;
  std::string sha256;
};

std::string sha256_hex(const std::filesystem::path& file);

ManifestEntry describe_output(const std::filesystem::path& out_dir, const std::string& relative);

/// Writes manifest.csv (path, bytes, sha256) into out_dir.
void write_manifest(const std::filesystem::path& out_dir, const std::vector<ManifestEntry>& entries);

}  // namespace photonfilter

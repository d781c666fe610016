#include "photonfilter/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

#include "photonfilter/io.hpp"

namespace photonfilter {

std::string sha256_hex(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 init failed");
  }
  std::array<char, 1 << 15> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);

  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

ManifestEntry describe_output(const std::filesystem::path& out_dir, const std::string& relative) {
  const auto full = out_dir / relative;
  return {relative, std::filesystem::file_size(full), sha256_hex(full)};
}

void write_manifest(const std::filesystem::path& out_dir, const std::vector<ManifestEntry>& entries) {
  Table table{{"path", "bytes", "sha256"}, {}};
  for (const auto& e : entries) table.rows.push_back({e.path, std::to_string(e.bytes), e.sha256});
  std::ofstream out(out_dir / "manifest.csv");
  write_table(out, table);
}

}  // namespace photonfilter

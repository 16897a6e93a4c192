#ifndef RCM_IO_HPP
#define RCM_IO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rcm {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a over a canonical string; used for graph and config hashes.
std::uint64_t fnv1a(const std::string& text);
std::string hash_hex(std::uint64_t h);

// Plain-text key-value config: "key = value" lines, '#' comments, no
// sections.  Parsing is strict; unknown or missing keys are rejected
// against a schema by the CLI.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::string canonical_config_text(const std::map<std::string, std::string>& kv);

// Header stamped on every output file: version, config hash, seed.
std::string file_header(const std::string& tool, std::uint64_t config_hash,
                        const std::string& seed_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rcm

#endif

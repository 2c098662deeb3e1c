#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Deterministic text output helpers: shortest round-trip double formatting,
// FNV-1a digests for manifests, and the flat key=value manifest writer.

namespace ratekit {

// Shortest decimal string that round-trips the double (std::to_chars).
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

// Writes `key=value` lines in the given order; '#'-prefixed keys become
// comment lines so the manifest stays loadable as a flag config file.
void write_manifest(const std::filesystem::path& path,
                    std::span<const std::pair<std::string, std::string>> entries);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ratekit

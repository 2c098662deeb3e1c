#include "ratekit/csvio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ratekit/ingest.hpp"

namespace ratekit {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64(buffer.str());
}

void write_manifest(const std::filesystem::path& path,
                    std::span<const std::pair<std::string, std::string>> entries) {
    std::string out;
    for (const auto& [key, value] : entries) {
        if (!key.empty() && (key.front() == '#' || key.front() == '[')) {
            // Comment or section line, emitted verbatim.
            out += key;
            if (!value.empty()) {
                out += ' ';
                out += value;
            }
        } else {
            out += key;
            out += '=';
            out += value;
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace ratekit

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace leap {

// FIPS 180-4 SHA-256; lowercase hex digest.
std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace leap

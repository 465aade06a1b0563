#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace occ::io {

std::string read_file(const std::filesystem::path& path);

//! Writes to a sibling temporary file and renames it over `path`, so a
//! reader never observes a truncated file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

//! `%.17g`, which round-trips every finite double.
std::string format_double(double value);

//! Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view value);

//! 64-bit FNV-1a, rendered as 16 hex digits.
std::string fingerprint(std::string_view bytes);

} // namespace occ::io

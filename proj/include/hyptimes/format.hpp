#pragma once

#include <filesystem>
#include <string>

namespace hyptimes {

/// Round-trip formatting: 17 significant digits, '.' decimal separator.
std::string format_real(double value);

/// Writes `contents` to `path` through a temporary file in the same directory and an
/// atomic rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

} // namespace hyptimes

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace piston {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Writes through a sibling temporary file and renames it into place, so a
/// reader never observes a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace piston

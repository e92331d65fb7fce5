#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace ricker {

/// Shortest round-trip-safe text for a double: 17 significant digits, "nan"/"inf" spelled out.
[[nodiscard]] std::string format_real(double v);

/// Writes through `body` into a sibling temp file and renames it over `path`, so a
/// failed write never leaves a partial file behind. Throws IoError with the path.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body);

}  // namespace ricker

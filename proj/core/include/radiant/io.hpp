#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace radiant::io {

/// Shortest text that prints every double with 17 significant digits.
std::string format_double(double x);

/// Opens `path` for writing, creating parent directories. Throws IoError with
/// the path on failure.
std::ofstream open_output(const std::filesystem::path& path,
                          std::ios::openmode mode = std::ios::out);

}  // namespace radiant::io

#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace acy::detail {

// "<prefix><name>"; a prefix ending in '/' names a directory.
std::filesystem::path prefixed(const std::filesystem::path& prefix, const std::string& name);

// Opens for writing, creating parent directories; throws IoError on failure.
std::ofstream open_output(const std::filesystem::path& path);

// Round-trippable decimal (17 significant digits).
std::string format_double(double value);

}  // namespace acy::detail

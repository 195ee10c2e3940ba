#pragma once

#include <filesystem>

#include "msb/image.hpp"

namespace msb {

// Reads any PNG as 8-bit RGB (palette/gray expanded, alpha stripped).
// Throws std::runtime_error naming the path on failure.
Image read_png(const std::filesystem::path& path);

// Writes 8-bit RGB; samples are quantized with quantize_sample().
void write_png(const std::filesystem::path& path, const Image& img);

}  // namespace msb

#pragma once

#include "lodtex/core/image.hpp"

#include <filesystem>

namespace lodtex {

/// Reads PNG or JPEG (decided by file signature). Gray inputs stay 1-channel,
/// everything else is converted to 8-bit RGB.
RasterImage read_image(const std::filesystem::path& path);

/// Reads image dimensions without decoding pixels (PNG and JPEG).
std::pair<int, int> read_image_size(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const RasterImage& img);
void write_jpeg(const std::filesystem::path& path, const RasterImage& img, int quality = 95);

/// Writes to PNG or JPEG based on the extension (.jpg/.jpeg, otherwise PNG).
void write_image(const std::filesystem::path& path, const RasterImage& img);

BinaryMask read_mask(const std::filesystem::path& path);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace lodtex

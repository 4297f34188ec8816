#pragma once

#include <filesystem>
#include <vector>

#include "elda/image.hpp"

namespace elda {

/// Loads an image as [0,1] gray. Supported by extension: .pgm/.ppm/.pnm,
/// .png, .jpg/.jpeg. Color inputs go through to_gray. Throws IoError on
/// unreadable paths and FormatError on undecodable content.
GrayImage load_image_gray(const std::filesystem::path& path);

/// Writes an 8-bit binary PGM (P5). Intensities are clamped to [0,1] and
/// rounded to 255 levels.
void save_pgm(const GrayImage& image, const std::filesystem::path& path);

/// All recognized image files directly inside `dir`, sorted by filename.
/// Throws IoError when the directory is missing or unreadable.
std::vector<std::filesystem::path> list_frames(
    const std::filesystem::path& dir);

} // namespace elda

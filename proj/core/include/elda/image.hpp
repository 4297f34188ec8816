#pragma once

#include <cstdint>
#include <vector>

#include "elda/geometry.hpp"

namespace elda {

/// Single-channel image, row-major, intensities in [0,1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> pixels;

  static GrayImage filled(int width, int height, float value);

  float at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  float& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  /// Edge-replicated access: out-of-range coordinates clamp to the border.
  float at_clamped(int x, int y) const;

  bool valid() const {
    return width >= 1 && height >= 1 &&
           pixels.size() == static_cast<std::size_t>(width) * height;
  }
};

/// Interleaved 8-bit RGB.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels; // r,g,b per pixel

  bool valid() const {
    return width >= 1 && height >= 1 &&
           pixels.size() == static_cast<std::size_t>(width) * height * 3;
  }
};

/// Rec.601 luminance of channels already scaled to [0,1].
/// Evaluated as (299r + 587g + 114b)/1000 so that equal channels map to
/// themselves exactly (white -> 1.0).
double luminance(double r, double g, double b);

/// Converts 8-bit RGB to a [0,1] gray image. Throws InvalidInput on an
/// empty image.
GrayImage to_gray(const RgbImage& rgb);

/// Resamples the box region of `frame` to out_size x out_size by bilinear
/// interpolation; samples outside the frame replicate the nearest edge
/// pixel. Throws InvalidInput on a zero-area box.
GrayImage extract_patch(const GrayImage& frame, const BoundingBox& box,
                        int out_size = 64);

} // namespace elda

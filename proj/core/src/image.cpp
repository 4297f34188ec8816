#include "elda/image.hpp"

#include <algorithm>
#include <cmath>

#include "elda/errors.hpp"

namespace elda {

GrayImage GrayImage::filled(int width, int height, float value) {
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, value);
  return img;
}

float GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return at(x, y);
}

double luminance(double r, double g, double b) {
  return (299.0 * r + 587.0 * g + 114.0 * b) / 1000.0;
}

GrayImage to_gray(const RgbImage& rgb) {
  if (!rgb.valid()) {
    throw InvalidInput("to_gray: empty or malformed RGB image");
  }
  GrayImage out;
  out.width = rgb.width;
  out.height = rgb.height;
  out.pixels.resize(static_cast<std::size_t>(rgb.width) * rgb.height);
  const std::uint8_t* p = rgb.pixels.data();
  for (std::size_t i = 0; i < out.pixels.size(); ++i, p += 3) {
    double luma = (299.0 * p[0] + 587.0 * p[1] + 114.0 * p[2]) / 255000.0;
    out.pixels[i] = static_cast<float>(luma);
  }
  return out;
}

GrayImage extract_patch(const GrayImage& frame, const BoundingBox& box,
                        int out_size) {
  if (!frame.valid()) {
    throw InvalidInput("extract_patch: invalid source frame");
  }
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw InvalidInput("extract_patch: zero-area box");
  }
  if (out_size < 1) {
    throw InvalidInput("extract_patch: output size must be >= 1");
  }

  GrayImage out;
  out.width = out_size;
  out.height = out_size;
  out.pixels.resize(static_cast<std::size_t>(out_size) * out_size);

  const double sx = box.w / out_size;
  const double sy = box.h / out_size;
  for (int oy = 0; oy < out_size; ++oy) {
    // Source coordinate of the output pixel center, in pixel-center units.
    const double fy = box.y + (oy + 0.5) * sy - 0.5;
    const int y0 = static_cast<int>(std::floor(fy));
    const double wy1 = fy - y0;
    for (int ox = 0; ox < out_size; ++ox) {
      const double fx = box.x + (ox + 0.5) * sx - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const double wx1 = fx - x0;
      // Lerp form a + t*(b - a): reproduces constant regions and on-grid
      // samples exactly, which the flat weighted sum does not.
      const double p00 = frame.at_clamped(x0, y0);
      const double p10 = frame.at_clamped(x0 + 1, y0);
      const double p01 = frame.at_clamped(x0, y0 + 1);
      const double p11 = frame.at_clamped(x0 + 1, y0 + 1);
      const double top = p00 + wx1 * (p10 - p00);
      const double bottom = p01 + wx1 * (p11 - p01);
      out.at(ox, oy) = static_cast<float>(top + wy1 * (bottom - top));
    }
  }
  return out;
}

} // namespace elda

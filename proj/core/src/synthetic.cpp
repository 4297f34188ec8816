#include "elda/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "elda/errors.hpp"
#include "elda/rng.hpp"

namespace elda {

namespace {

float quantize255(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<float>(std::lround(v * 255.0) / 255.0);
}

} // namespace

SyntheticSequence make_synthetic_sequence(const SyntheticSpec& spec) {
  if (spec.trajectory.empty()) {
    throw InvalidInput("make_synthetic_sequence: empty trajectory");
  }
  if (spec.frame_width < 1 || spec.frame_height < 1 ||
      spec.object_width < 1 || spec.object_height < 1) {
    throw InvalidInput("make_synthetic_sequence: degenerate sizes");
  }
  if (spec.object_width > spec.frame_width ||
      spec.object_height > spec.frame_height) {
    throw InvalidInput("make_synthetic_sequence: object larger than frame");
  }
  if (!(spec.noise_sigma >= 0.0)) {
    throw InvalidInput("make_synthetic_sequence: negative noise level");
  }

  const int ow = spec.object_width;
  const int oh = spec.object_height;

  // One fixed texture reused in every frame.
  std::mt19937_64 texture_rng(spec.texture_seed);
  std::vector<double> texture(static_cast<std::size_t>(ow) * oh);
  for (double& t : texture) {
    t = uniform_unit(texture_rng);
  }

  std::mt19937_64 noise_rng(spec.noise_seed);
  SyntheticSequence seq;
  seq.frames.reserve(spec.trajectory.size());
  seq.truth.boxes.reserve(spec.trajectory.size());

  for (std::size_t f = 0; f < spec.trajectory.size(); ++f) {
    const Point c = spec.trajectory[f];
    const int left = static_cast<int>(std::lround(c.x - 0.5 * ow));
    const int top = static_cast<int>(std::lround(c.y - 0.5 * oh));
    if (left < 0 || top < 0 || left + ow > spec.frame_width ||
        top + oh > spec.frame_height) {
      throw InvalidInput("make_synthetic_sequence: trajectory leaves the "
                         "frame at index " + std::to_string(f));
    }

    GrayImage frame = GrayImage::filled(spec.frame_width, spec.frame_height,
                                        spec.background_level);
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x) {
        frame.at(left + x, top + y) =
            static_cast<float>(texture[static_cast<std::size_t>(y) * ow + x]);
      }
    }
    if (spec.noise_sigma > 0.0) {
      for (float& p : frame.pixels) {
        p = static_cast<float>(p + spec.noise_sigma * gaussian(noise_rng));
      }
    }
    for (float& p : frame.pixels) {
      p = quantize255(p);
    }

    seq.frames.push_back(std::move(frame));
    seq.truth.boxes.push_back(BoundingBox{static_cast<double>(left),
                                          static_cast<double>(top),
                                          static_cast<double>(ow),
                                          static_cast<double>(oh)});
  }
  return seq;
}

} // namespace elda

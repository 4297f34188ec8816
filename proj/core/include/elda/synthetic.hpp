#pragma once

#include <cstdint>
#include <vector>

#include "elda/image.hpp"
#include "elda/metrics.hpp"

namespace elda {

/// Recipe for a deterministic desk-scale test sequence: a fixed textured
/// rectangle composited onto a flat background at the given centers, with
/// optional per-pixel Gaussian noise.
struct SyntheticSpec {
  int frame_width = 320;
  int frame_height = 240;
  int object_width = 40;
  int object_height = 40;
  std::vector<Point> trajectory; // object center per frame
  double noise_sigma = 0.0;
  float background_level = 0.5f;
  std::uint64_t texture_seed = 1;
  std::uint64_t noise_seed = 2;
};

struct SyntheticSequence {
  std::vector<GrayImage> frames;
  GroundTruth truth;
};

/// Builds the frames and their ground truth. Object placement snaps each
/// center to the nearest integer top-left corner and the ground-truth
/// boxes report exactly what was composited. Pixels are quantized to 255
/// levels, so frames survive an 8-bit file round trip bit-exactly.
/// Throws InvalidInput when the trajectory is empty or any box leaves the
/// frame.
SyntheticSequence make_synthetic_sequence(const SyntheticSpec& spec);

} // namespace elda

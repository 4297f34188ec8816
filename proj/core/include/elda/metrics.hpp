#pragma once

#include <span>
#include <vector>

#include "elda/geometry.hpp"

namespace elda {

/// Per-frame tracker output. The reported center is always derived from
/// the box, so the two cannot disagree.
struct TrackResult {
  int frame = 0;
  BoundingBox box;
  double score = 0.0;

  Point center() const { return box.center(); }
};

struct GroundTruth {
  std::vector<BoundingBox> boxes; // one per evaluated frame
};

/// Intersection area over union area, in [0,1]; 0 for disjoint or
/// touching boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Mean Euclidean distance (pixels) between tracked and ground-truth
/// centers. Throws InvalidInput on length mismatch.
double cle(std::span<const TrackResult> results, const GroundTruth& gt);

/// Fraction of frames whose overlap ratio is strictly greater than
/// `threshold`. Throws InvalidInput on length mismatch.
double success_rate(std::span<const TrackResult> results,
                    const GroundTruth& gt, double threshold = 0.5);

struct Report {
  double cle = 0.0;
  double sr = 0.0;
  std::vector<double> per_frame_errors; // center error per frame
};

Report report(std::span<const TrackResult> results, const GroundTruth& gt);

} // namespace elda

#include "elda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elda/errors.hpp"

namespace elda {

namespace {

void require_aligned(std::size_t results, std::size_t gt) {
  if (results != gt) {
    throw InvalidInput("metrics: " + std::to_string(results) +
                       " results vs " + std::to_string(gt) +
                       " ground-truth boxes");
  }
}

double center_error(const TrackResult& r, const BoundingBox& g) {
  const Point ct = r.center();
  const Point cg = g.center();
  return std::hypot(ct.x - cg.x, ct.y - cg.y);
}

} // namespace

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) -
                                      std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) -
                                      std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double cle(std::span<const TrackResult> results, const GroundTruth& gt) {
  require_aligned(results.size(), gt.boxes.size());
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    sum += center_error(results[i], gt.boxes[i]);
  }
  return sum / static_cast<double>(results.size());
}

double success_rate(std::span<const TrackResult> results,
                    const GroundTruth& gt, double threshold) {
  require_aligned(results.size(), gt.boxes.size());
  if (results.empty()) return 0.0;
  std::size_t successes = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (iou(results[i].box, gt.boxes[i]) > threshold) {
      ++successes;
    }
  }
  return static_cast<double>(successes) / static_cast<double>(results.size());
}

Report report(std::span<const TrackResult> results, const GroundTruth& gt) {
  require_aligned(results.size(), gt.boxes.size());
  Report rep;
  rep.per_frame_errors.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    rep.per_frame_errors.push_back(center_error(results[i], gt.boxes[i]));
  }
  rep.cle = cle(results, gt);
  rep.sr = success_rate(results, gt);
  return rep;
}

} // namespace elda

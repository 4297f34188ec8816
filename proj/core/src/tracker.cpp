#include "elda/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "elda/errors.hpp"
#include "elda/hog.hpp"

namespace elda {

namespace {

void validate_search(int radius, int stride) {
  if (radius < 1) throw InvalidInput("detect_radius must be >= 1");
  if (stride < 1) throw InvalidInput("search_stride must be >= 1");
}

void validate_box_in_frame(const GrayImage& frame, const BoundingBox& box,
                           const char* what) {
  if (!(box.w > 0.0) || !(box.h > 0.0)) {
    throw InvalidInput(std::string(what) + ": box must have positive size");
  }
  if (frame.width < box.w || frame.height < box.h) {
    throw InvalidInput(std::string(what) + ": frame " +
                       std::to_string(frame.width) + "x" +
                       std::to_string(frame.height) +
                       " is smaller than the object box");
  }
}

} // namespace

std::vector<std::pair<int, int>> candidate_offsets(int radius, int stride,
                                                   DetectArea area) {
  validate_search(radius, stride);
  std::vector<std::pair<int, int>> offsets;
  const long long r2 = static_cast<long long>(radius) * radius;
  // Multiples of the stride, so (0,0) (staying put) is always a candidate.
  const int steps = radius / stride;
  for (int ky = -steps; ky <= steps; ++ky) {
    const int dy = ky * stride;
    for (int kx = -steps; kx <= steps; ++kx) {
      const int dx = kx * stride;
      if (area == DetectArea::Disc) {
        const long long d2 =
            static_cast<long long>(dx) * dx + static_cast<long long>(dy) * dy;
        if (d2 > r2) continue;
      }
      offsets.emplace_back(dx, dy);
    }
  }
  return offsets;
}

std::vector<Point> candidate_centers(const Point& previous, int radius,
                                     int stride, DetectArea area,
                                     int frame_width, int frame_height) {
  if (frame_width < 1 || frame_height < 1) {
    throw InvalidInput("frame must be non-empty");
  }
  const auto offsets = candidate_offsets(radius, stride, area);
  std::vector<Point> centers;
  centers.reserve(offsets.size());
  // Duplicates only arise from clamping, so the quadratic dedup scan almost
  // never iterates far; candidate counts are a few thousand at most.
  for (const auto& [dx, dy] : offsets) {
    Point c{previous.x + dx, previous.y + dy};
    c.x = std::clamp(c.x, 0.0, static_cast<double>(frame_width - 1));
    c.y = std::clamp(c.y, 0.0, static_cast<double>(frame_height - 1));
    bool dup = false;
    for (auto it = centers.rbegin(); it != centers.rend(); ++it) {
      if (it->x == c.x && it->y == c.y) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    centers.push_back(c);
  }
  return centers;
}

OnlineNegatives sample_online_negatives(const GrayImage& frame,
                                        const Point& center,
                                        const BoundingBox& box_size,
                                        const TrackerConfig& config,
                                        Rng& rng) {
  if (!(config.ring_inner >= 0.0) ||
      !(config.ring_inner < config.ring_outer)) {
    throw InvalidInput("require 0 <= ring_inner < ring_outer");
  }
  validate_box_in_frame(frame, box_size, "sample_online_negatives");

  OnlineNegatives out;
  out.features.reserve(static_cast<std::size_t>(
      std::max(0, config.negatives_per_frame)));
  const double inner2 = config.ring_inner * config.ring_inner;
  const double outer = config.ring_outer;
  const int attempts_per_sample = 256;
  for (int i = 0; i < config.negatives_per_frame; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < attempts_per_sample; ++attempt) {
      // Uniform over the annulus: rejection from the bounding square.
      const double dx = uniform_in(rng, -outer, outer);
      const double dy = uniform_in(rng, -outer, outer);
      const double d2 = dx * dx + dy * dy;
      if (d2 <= inner2 || d2 > outer * outer) continue;
      const Point c{center.x + dx, center.y + dy};
      if (c.x < 0.0 || c.y < 0.0 || c.x > frame.width - 1 ||
          c.y > frame.height - 1) {
        continue;
      }
      const BoundingBox box = box_from_center(c, box_size.w, box_size.h);
      const GrayImage patch = extract_patch(frame, box);
      out.features.push_back(extract_hog(patch));
      placed = true;
      break;
    }
    if (!placed) ++out.shortfall;
  }
  return out;
}

Tracker::Tracker(const GrayImage& first_frame, const BoundingBox& first_box,
                 BackgroundModel background, const TrackerConfig& config)
    : config_(config),
      background_(std::move(background)),
      box_(first_box),
      rng_(config.rng_seed) {
  validate_search(config_.detect_radius, config_.search_stride);
  if (config_.time_window < 1) throw InvalidInput("time_window must be >= 1");
  if (config_.admission_interval < 1) {
    throw InvalidInput("admission_interval must be >= 1");
  }
  if (!(config_.online_weight_multiplier > 0.0)) {
    throw InvalidInput("online_weight_multiplier must be > 0");
  }
  validate_box_in_frame(first_frame, first_box, "Tracker");
  if (background_.dim() != kHogDim) {
    throw InvalidInput("background model dimension " +
                       std::to_string(background_.dim()) +
                       " does not match the feature dimension " +
                       std::to_string(kHogDim));
  }

  const GrayImage patch = extract_patch(first_frame, box_);
  const FeatureVector exemplar = extract_hog(patch);

  absorb_negatives(first_frame, box_.center());
  ensure_factorization();

  ObjectModelConfig model_config;
  model_config.time_window = config_.time_window;
  model_config.admission_interval = config_.admission_interval;
  model_ = std::make_unique<ObjectModel>(exemplar, *factorization_,
                                         model_config);
  frame_ = 1;
  last_score_ = model_->ensemble_score(exemplar);
}

TrackResult Tracker::track(const GrayImage& frame) {
  validate_box_in_frame(frame, box_, "track");

  const Point previous = box_.center();
  const std::vector<Point> centers =
      candidate_centers(previous, config_.detect_radius, config_.search_stride,
                        config_.detect_area, frame.width, frame.height);

  double best_score = -std::numeric_limits<double>::infinity();
  double best_disp2 = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  FeatureVector best_feature;
  bool have_best = false;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const BoundingBox box = box_from_center(centers[i], box_.w, box_.h);
    const GrayImage patch = extract_patch(frame, box);
    FeatureVector feature = extract_hog(patch);
    const double score = model_->ensemble_score(feature);
    const double ddx = centers[i].x - previous.x;
    const double ddy = centers[i].y - previous.y;
    const double disp2 = ddx * ddx + ddy * ddy;
    const bool better =
        !have_best || score > best_score ||
        (score == best_score && disp2 < best_disp2);
    if (better) {
      best_score = score;
      best_disp2 = disp2;
      best_index = i;
      best_feature = std::move(feature);
      have_best = true;
    }
  }
  if (!have_best) {
    throw InvalidInput("no candidates could be generated");
  }

  box_ = box_from_center(centers[best_index], box_.w, box_.h);
  ++frame_;
  last_score_ = best_score;

  absorb_negatives(frame, box_.center());

  if (model_->admission_due(frame_)) {
    ensure_factorization();
    model_->admit(best_feature, frame_, *factorization_);
  }

  return TrackResult{frame_, box_, best_score};
}

void Tracker::absorb_negatives(const GrayImage& frame, const Point& center) {
  OnlineNegatives negatives =
      sample_online_negatives(frame, center, box_, config_, rng_);
  negative_shortfall_ += negatives.shortfall;
  if (negatives.features.empty()) return;

  BackgroundModel batch = batch_stats(negatives.features);
  if (config_.online_weight_multiplier != 1.0) {
    const double scaled = static_cast<double>(batch.count) *
                          config_.online_weight_multiplier;
    batch.count = static_cast<std::uint64_t>(
        std::max<long long>(1, std::llround(scaled)));
  }
  background_ = merge(background_, batch);
  factorization_stale_ = true;
}

void Tracker::ensure_factorization() {
  if (factorization_ && !factorization_stale_) return;
  const double reg = config_.regularization > 0.0
                         ? config_.regularization
                         : default_regularization(background_);
  factorization_.emplace(background_, reg);
  factorization_stale_ = false;
}

} // namespace elda

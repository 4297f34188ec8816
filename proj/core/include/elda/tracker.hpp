#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "elda/background.hpp"
#include "elda/detector.hpp"
#include "elda/geometry.hpp"
#include "elda/image.hpp"
#include "elda/metrics.hpp"
#include "elda/object_model.hpp"
#include "elda/rng.hpp"

namespace elda {

/// Shape of the candidate search region around the previous center.
enum class DetectArea { Disc, Square };

struct TrackerConfig {
  /// Maximum per-axis candidate displacement in pixels.
  int detect_radius = 30;
  /// Candidate grid spacing in pixels.
  int search_stride = 2;
  DetectArea detect_area = DetectArea::Disc;

  /// Online negatives are sampled from centers at distance
  /// ring_inner < d <= ring_outer from the new object center.
  double ring_inner = 5.0;
  double ring_outer = 30.0;
  int negatives_per_frame = 64;

  /// Short-term memory span in frames and admission cadence.
  int time_window = 500;
  int admission_interval = 1;

  /// Ridge term added to the background covariance. Non-positive selects
  /// the automatic trace-scaled default.
  double regularization = 0.0;

  /// Each online negative batch counts as count * multiplier samples when
  /// merged into the background model.
  double online_weight_multiplier = 1.0;

  std::uint64_t rng_seed = 7;
};

/// Integer candidate displacements for one detection pass, ordered by
/// ascending dy then ascending dx.
std::vector<std::pair<int, int>> candidate_offsets(int radius, int stride,
                                                   DetectArea area);

/// Candidate object centers for a frame: the offset lattice shifted to
/// `previous`, each coordinate clamped to [0, w-1] x [0, h-1], duplicates
/// removed, canonical scan order preserved.
std::vector<Point> candidate_centers(const Point& previous, int radius,
                                     int stride, DetectArea area,
                                     int frame_width, int frame_height);

struct OnlineNegatives {
  std::vector<FeatureVector> features;
  /// Number of requested samples that could not be placed in-frame.
  int shortfall = 0;
};

/// Samples negative patches of the same size as `box_size` whose centers
/// lie in the annulus ring_inner < d <= ring_outer around `center`. Draws
/// whose centers fall outside the frame are rejected and retried up to an
/// attempt cap; `shortfall` counts samples that could not be placed.
OnlineNegatives sample_online_negatives(const GrayImage& frame,
                                        const Point& center,
                                        const BoundingBox& box_size,
                                        const TrackerConfig& config, Rng& rng);

class Tracker {
 public:
  /// Initializes from the first frame and its annotated box: extracts the
  /// object exemplar, seeds the background model with negatives sampled
  /// around the box, and trains the permanent first-frame detector.
  Tracker(const GrayImage& first_frame, const BoundingBox& first_box,
          BackgroundModel background, const TrackerConfig& config);

  /// Processes the next frame and returns its estimated box. Frames must be
  /// fed in order; the first call corresponds to frame 2.
  TrackResult track(const GrayImage& frame);

  const BoundingBox& current_box() const { return box_; }
  int current_frame() const { return frame_; }
  double last_score() const { return last_score_; }
  const BackgroundModel& background() const { return background_; }
  const ObjectModel& object_model() const { return *model_; }
  const TrackerConfig& config() const { return config_; }
  /// Total negatives that could not be placed in-frame across all frames.
  std::int64_t negative_shortfall() const { return negative_shortfall_; }

 private:
  void absorb_negatives(const GrayImage& frame, const Point& center);
  void ensure_factorization();

  TrackerConfig config_;
  BackgroundModel background_;
  std::optional<BackgroundFactorization> factorization_;
  bool factorization_stale_ = false;
  std::unique_ptr<ObjectModel> model_;
  BoundingBox box_;
  int frame_ = 0;
  double last_score_ = 0.0;
  std::int64_t negative_shortfall_ = 0;
  Rng rng_;
};

} // namespace elda

#pragma once

#include <vector>

#include "elda/detector.hpp"

namespace elda {

struct WeightedDetector {
  ExemplarDetector detector;
  double weight = 0.0; // >= 0, finite
};

struct ObjectModelConfig {
  int time_window = 500;     // frames an exemplar stays in the short-term set
  int admission_interval = 1; // minimum frames between admissions
};

/// The tracked object's appearance model: one permanent long-term detector
/// trained on the frame-1 exemplar (weight 1) plus a time-windowed set of
/// short-term detectors weighted by their long-term score ratio.
///
/// Mutated only between frames by the single tracking loop; all scoring is
/// const and safe against an immutable snapshot.
class ObjectModel {
public:
  /// Trains the long-term detector from the frame-1 exemplar.
  ObjectModel(const FeatureVector& exemplar1,
              const BackgroundFactorization& bg,
              ObjectModelConfig config = {});

  /// Semi-supervised weight of a candidate exemplar: the ratio of its
  /// long-term raw score to the frame-1 exemplar's own, clamped at 0.
  /// Throws DegenerateExemplarError when the frame-1 score is <= 1e-12.
  double exemplar_weight(const FeatureVector& x_p) const;

  /// True when `frame` is at least admission_interval past the last
  /// admitted frame.
  bool admission_due(int frame) const;

  /// Trains a detector on x_p, attaches its exemplar weight, appends it to
  /// the short-term set, and evicts entries with source_frame <= frame -
  /// time_window. Zero-weight exemplars are admitted like any other. The
  /// long-term entry is never touched. Throws InvalidInput when called
  /// before admission_interval has elapsed or with frame < 2.
  void admit(const FeatureVector& x_p, int frame,
             const BackgroundFactorization& bg);

  /// Weighted ensemble response, evaluated through the pre-summed
  /// hyperplane (algebraically equal to the explicit sum, O(d) per call).
  double ensemble_score(const FeatureVector& x) const;

  /// Literal term-by-term weighted sum over all detectors. Kept as the
  /// second route for verifying the pre-summed evaluation.
  double ensemble_score_explicit(const FeatureVector& x) const;

  const WeightedDetector& long_term() const { return long_term_; }
  const std::vector<WeightedDetector>& short_term() const {
    return short_term_;
  }
  const ObjectModelConfig& config() const { return config_; }
  Eigen::Index dim() const { return long_term_.detector.weights.size(); }

private:
  void rebuild_summary();

  ObjectModelConfig config_;
  WeightedDetector long_term_;
  std::vector<WeightedDetector> short_term_; // source_frame strictly increasing
  int last_admitted_frame_ = 1;
  double exemplar_score_ = 0.0; // long-term raw score of its own exemplar

  // Pre-summed hyperplane: sum of weight_i * (w_i, b_i) over all entries.
  Eigen::VectorXd summary_weights_;
  double summary_bias_ = 0.0;
};

} // namespace elda

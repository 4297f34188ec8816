#include "elda/object_model.hpp"

#include <algorithm>
#include <cmath>

#include "elda/errors.hpp"

namespace elda {

ObjectModel::ObjectModel(const FeatureVector& exemplar1,
                         const BackgroundFactorization& bg,
                         ObjectModelConfig config)
    : config_(config) {
  if (config_.time_window < 1) {
    throw InvalidInput("ObjectModel: time_window must be >= 1");
  }
  if (config_.admission_interval < 1) {
    throw InvalidInput("ObjectModel: admission_interval must be >= 1");
  }
  long_term_.detector = bg.train(exemplar1, 1);
  long_term_.weight = 1.0;
  exemplar_score_ = raw_score(long_term_.detector, exemplar1);
  rebuild_summary();
}

double ObjectModel::exemplar_weight(const FeatureVector& x_p) const {
  if (exemplar_score_ <= 1e-12) {
    throw DegenerateExemplarError(
        "exemplar_weight: frame-1 exemplar is indistinguishable from the "
        "background mean");
  }
  return std::max(0.0, raw_score(long_term_.detector, x_p) / exemplar_score_);
}

bool ObjectModel::admission_due(int frame) const {
  return frame - last_admitted_frame_ >= config_.admission_interval;
}

void ObjectModel::admit(const FeatureVector& x_p, int frame,
                        const BackgroundFactorization& bg) {
  if (frame < 2) {
    throw InvalidInput("admit: short-term exemplars start at frame 2");
  }
  if (!admission_due(frame)) {
    throw InvalidInput("admit: admission interval has not elapsed");
  }

  WeightedDetector entry;
  entry.detector = bg.train(x_p, frame);
  entry.weight = exemplar_weight(x_p);
  short_term_.push_back(std::move(entry));
  last_admitted_frame_ = frame;

  const int oldest_kept = frame - config_.time_window + 1;
  std::erase_if(short_term_, [&](const WeightedDetector& w) {
    return w.detector.source_frame < oldest_kept;
  });
  rebuild_summary();
}

double ObjectModel::ensemble_score(const FeatureVector& x) const {
  if (x.size() != summary_weights_.size()) {
    throw InvalidInput("ensemble_score: dimension mismatch");
  }
  return summary_weights_.dot(x) + summary_bias_;
}

double ObjectModel::ensemble_score_explicit(const FeatureVector& x) const {
  double total = long_term_.weight * raw_score(long_term_.detector, x);
  for (const WeightedDetector& w : short_term_) {
    total += w.weight * raw_score(w.detector, x);
  }
  return total;
}

void ObjectModel::rebuild_summary() {
  summary_weights_ = long_term_.weight * long_term_.detector.weights;
  summary_bias_ = long_term_.weight * long_term_.detector.bias;
  for (const WeightedDetector& w : short_term_) {
    summary_weights_.noalias() += w.weight * w.detector.weights;
    summary_bias_ += w.weight * w.detector.bias;
  }
}

} // namespace elda

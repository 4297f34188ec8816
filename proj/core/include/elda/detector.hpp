#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "elda/background.hpp"
#include "elda/hog.hpp"

namespace elda {

/// One trained LDA hyperplane plus its source exemplar. Immutable after
/// construction; scoring is pure and safe to call concurrently.
struct ExemplarDetector {
  Eigen::VectorXd weights;
  double bias = 0.0;
  int source_frame = 1;
  FeatureVector exemplar; // retained for semi-supervised weighting
};

/// Scale-aware ridge: max(1e-4 * trace(cov)/d, 1e-8). Guarantees positive
/// definiteness of the regularized covariance from finite negative sets.
double default_regularization(const BackgroundModel& bg);

/// Cholesky factorization of (cov + reg*I) plus the negative mean. The
/// covariance is exemplar-independent, so one factorization trains any
/// number of detectors until the background model changes. Read-only after
/// construction; rebuilds need exclusive access.
class BackgroundFactorization {
public:
  /// Throws InvalidInput when bg.count < 2 or reg <= 0; NumericalError
  /// when the factorization fails.
  BackgroundFactorization(const BackgroundModel& bg, double reg);

  Eigen::Index dim() const { return mean_.size(); }
  double regularization() const { return reg_; }
  const Eigen::VectorXd& negative_mean() const { return mean_; }

  /// Solves (cov + reg*I) x = rhs.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Trains a detector from a single positive exemplar: weights solve
  /// (cov + reg*I) w = x_p - mean, bias = -w.(x_p + mean)/2 (midpoint
  /// rule: the exemplar scores positive, the negative mean scores the
  /// exact opposite).
  ExemplarDetector train(const FeatureVector& x_p, int source_frame) const;

private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd mean_;
  double reg_ = 0.0;
};

/// One-shot training against a background model. Factorizes, trains, and
/// verifies the relative solve residual
/// |(cov + reg*I) w - (x_p - mean)| / |x_p - mean| <= 1e-9
/// (skipped for a zero right-hand side). reg <= 0 selects
/// default_regularization(bg). Throws NumericalError when the residual
/// bound fails.
ExemplarDetector train_detector(const FeatureVector& x_p,
                                const BackgroundModel& bg, double reg,
                                int source_frame = 1);

/// The pre-sign linear response weights.x + bias.
double raw_score(const ExemplarDetector& det, const FeatureVector& x);

/// +1 when raw_score exceeds `threshold`, else -1 (ties go to background).
int classify(const ExemplarDetector& det, const FeatureVector& x,
             double threshold = 0.0);

} // namespace elda

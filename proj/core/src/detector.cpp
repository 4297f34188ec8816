#include "elda/detector.hpp"

#include <algorithm>
#include <cmath>

#include "elda/errors.hpp"

namespace elda {

namespace {
constexpr double kResidualBound = 1e-9;
}

double default_regularization(const BackgroundModel& bg) {
  const double d = static_cast<double>(bg.dim());
  if (d == 0.0) return 1e-8;
  return std::max(1e-4 * bg.cov.trace() / d, 1e-8);
}

BackgroundFactorization::BackgroundFactorization(const BackgroundModel& bg,
                                                 double reg) {
  if (bg.count < 2) {
    throw InvalidInput(
        "BackgroundFactorization: background model needs at least 2 samples");
  }
  if (!(reg > 0.0)) {
    throw InvalidInput("BackgroundFactorization: regularization must be > 0");
  }
  mean_ = bg.mean;
  reg_ = reg;

  Eigen::MatrixXd regularized = bg.cov;
  regularized.diagonal().array() += reg;
  llt_.compute(regularized);
  if (llt_.info() != Eigen::Success) {
    throw NumericalError(
        "BackgroundFactorization: covariance not positive definite after "
        "regularization");
  }
}

Eigen::VectorXd BackgroundFactorization::solve(
    const Eigen::VectorXd& rhs) const {
  if (rhs.size() != dim()) {
    throw InvalidInput("BackgroundFactorization::solve: dimension mismatch");
  }
  return llt_.solve(rhs);
}

ExemplarDetector BackgroundFactorization::train(const FeatureVector& x_p,
                                                int source_frame) const {
  if (x_p.size() != dim()) {
    throw InvalidInput("train: exemplar dimension mismatch");
  }
  ExemplarDetector det;
  det.weights = solve(x_p - mean_);
  det.bias = -0.5 * det.weights.dot(x_p + mean_);
  det.source_frame = source_frame;
  det.exemplar = x_p;
  if (!det.weights.allFinite() || !std::isfinite(det.bias)) {
    throw NumericalError("train: non-finite detector weights");
  }
  return det;
}

ExemplarDetector train_detector(const FeatureVector& x_p,
                                const BackgroundModel& bg, double reg,
                                int source_frame) {
  if (x_p.size() != bg.dim()) {
    throw InvalidInput("train_detector: exemplar dimension mismatch");
  }
  if (reg <= 0.0) {
    reg = default_regularization(bg);
  }
  const BackgroundFactorization fact(bg, reg);
  ExemplarDetector det = fact.train(x_p, source_frame);

  const Eigen::VectorXd rhs = x_p - bg.mean;
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0) {
    Eigen::VectorXd residual = bg.cov * det.weights - rhs;
    residual += reg * det.weights;
    if (residual.norm() > kResidualBound * rhs_norm) {
      throw NumericalError("train_detector: solve residual exceeds 1e-9");
    }
  }
  return det;
}

double raw_score(const ExemplarDetector& det, const FeatureVector& x) {
  if (x.size() != det.weights.size()) {
    throw InvalidInput("raw_score: dimension mismatch");
  }
  return det.weights.dot(x) + det.bias;
}

int classify(const ExemplarDetector& det, const FeatureVector& x,
             double threshold) {
  return raw_score(det, x) > threshold ? +1 : -1;
}

} // namespace elda

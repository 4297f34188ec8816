#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "elda/hog.hpp"

namespace elda {

/// Pooled negative-sample statistics: mean, population covariance
/// (divisor n) and sample count. Population form keeps merges exact.
/// A model with count == 0 is the merge identity regardless of dimension.
struct BackgroundModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  std::uint64_t count = 0;

  Eigen::Index dim() const { return mean.size(); }

  static BackgroundModel zero(Eigen::Index d) {
    return {Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Zero(d, d), 0};
  }
};

/// Mean and population covariance of the samples. Empty input yields the
/// count-0 identity model. Throws InvalidInput on mixed dimensions.
BackgroundModel batch_stats(const std::vector<FeatureVector>& samples);

/// Exact pooled statistics of the two sample sets. Merging with a count-0
/// model returns the other operand unchanged; the result covariance is
/// symmetrized. Throws InvalidInput on dimension mismatch.
BackgroundModel merge(const BackgroundModel& a, const BackgroundModel& b);

struct OfflineBuildOptions {
  int patch_size = kPatchSize;
  std::uint64_t rng_seed = 0;
};

/// Harvests num_patches random square patches (uniform position, scale in
/// [patch_size, min(W,H)]) from the listed images, HOG-encodes them and
/// returns their batch statistics. Deterministic for a fixed seed. Images
/// smaller than 16x16 are skipped with a warning on stderr.
/// Throws IoError naming the first unreadable path; InvalidInput when no
/// usable image remains or num_patches < 2.
BackgroundModel build_offline(
    const std::vector<std::filesystem::path>& image_paths, int num_patches,
    const OfflineBuildOptions& options = {});

/// Binary model file: magic "ELDABG1\0", then little-endian
/// u32 version=1, u32 d, u64 n, d float64 mean, d*d float64 row-major
/// covariance. Round-trips bit-exactly.
void save_model(const BackgroundModel& model, const std::filesystem::path& path);
BackgroundModel load_model(const std::filesystem::path& path);

} // namespace elda

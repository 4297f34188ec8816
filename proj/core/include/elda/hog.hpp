#pragma once

#include <Eigen/Core>

#include "elda/image.hpp"

namespace elda {

inline constexpr int kPatchSize = 64;       // input patch side, pixels
inline constexpr int kHogCellSize = 8;      // pixels per cell side
inline constexpr int kHogCells = 8;         // cells per patch side
inline constexpr int kHogBins = 9;          // orientation bins over [0, 180)
inline constexpr int kHogBlockCopies = 4;   // normalized copies per cell
inline constexpr int kHogDim =
    kHogCells * kHogCells * kHogBlockCopies * kHogBins; // 2304

/// Fixed-length descriptor of a 64x64 patch; kHogDim entries in [0, 0.2].
using FeatureVector = Eigen::VectorXd;

/// Computes the HOG descriptor of a 64x64 patch.
///
/// Per pixel: [-1,0,1] centered differences with edge replication, gradient
/// magnitude as vote weight, orientation folded into [0,180) with bin
/// centers at k*20 degrees, votes split bilinearly across the two nearest
/// bins and the four nearest cells. Each cell then emits its 9-bin
/// histogram four times, once per surrounding 2x2 block, divided by that
/// block's L2 energy and clipped at 0.2 (no renormalization). Blocks
/// missing at the patch border reuse the nearest valid block's norm.
/// Copy order per cell is NW, NE, SW, SE; cells are concatenated row-major.
///
/// Throws InvalidInput unless the patch is exactly 64x64.
FeatureVector extract_hog(const GrayImage& patch);

} // namespace elda

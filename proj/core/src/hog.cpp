#include "elda/hog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "elda/errors.hpp"

namespace elda {

namespace {

constexpr double kBlockNormFloor = 1e-12;
constexpr double kClip = 0.2;

struct SpatialWeight {
  int lo;        // lower cell index, -1 when off the grid
  int hi;        // lo + 1, kHogCells when off the grid
  double w_lo;
  double w_hi;
};

// Bilinear cell weights for one pixel coordinate. Cell centers sit at
// (8i + 4) in pixel-center units, so coordinate (p + 0.5) maps to the
// continuous cell index (p + 0.5)/8 - 0.5. Votes to cells outside the
// grid are dropped.
std::array<SpatialWeight, kPatchSize> make_spatial_table() {
  std::array<SpatialWeight, kPatchSize> table{};
  for (int p = 0; p < kPatchSize; ++p) {
    const double u = (p + 0.5) / kHogCellSize - 0.5;
    const int lo = static_cast<int>(std::floor(u));
    const double w_hi = u - lo;
    table[p] = {lo, lo + 1, 1.0 - w_hi, w_hi};
  }
  return table;
}

} // namespace

FeatureVector extract_hog(const GrayImage& patch) {
  if (!patch.valid() || patch.width != kPatchSize ||
      patch.height != kPatchSize) {
    throw InvalidInput("extract_hog: patch must be exactly 64x64");
  }

  static const std::array<SpatialWeight, kPatchSize> spatial =
      make_spatial_table();
  constexpr double pi = std::numbers::pi;
  constexpr double bins_per_rad = kHogBins / pi;

  // hist[cy][cx][bin]
  double hist[kHogCells][kHogCells][kHogBins] = {};

  for (int y = 0; y < kPatchSize; ++y) {
    const SpatialWeight& sy = spatial[y];
    for (int x = 0; x < kPatchSize; ++x) {
      const double gx =
          static_cast<double>(patch.at(std::min(x + 1, kPatchSize - 1), y)) -
          static_cast<double>(patch.at(std::max(x - 1, 0), y));
      const double gy =
          static_cast<double>(patch.at(x, std::min(y + 1, kPatchSize - 1))) -
          static_cast<double>(patch.at(x, std::max(y - 1, 0)));
      const double mag = std::sqrt(gx * gx + gy * gy);
      if (mag == 0.0) {
        continue;
      }
      double ang = std::atan2(gy, gx);
      if (ang < 0.0) ang += pi;
      if (ang >= pi) ang -= pi;

      // Continuous bin coordinate; roundoff can land exactly on 9, in
      // which case the full vote belongs to the wrapped bin 0.
      const double ob = ang * bins_per_rad;
      const int b0 = std::min(static_cast<int>(ob), kHogBins - 1);
      const double fb = ob - b0;
      const int b1 = (b0 + 1) % kHogBins;
      const double v0 = mag * (1.0 - fb);
      const double v1 = mag * fb;

      const SpatialWeight& sx = spatial[x];
      for (int jy = 0; jy < 2; ++jy) {
        const int cy = (jy == 0) ? sy.lo : sy.hi;
        if (cy < 0 || cy >= kHogCells) continue;
        const double wy = (jy == 0) ? sy.w_lo : sy.w_hi;
        for (int jx = 0; jx < 2; ++jx) {
          const int cx = (jx == 0) ? sx.lo : sx.hi;
          if (cx < 0 || cx >= kHogCells) continue;
          const double w = wy * ((jx == 0) ? sx.w_lo : sx.w_hi);
          hist[cy][cx][b0] += v0 * w;
          hist[cy][cx][b1] += v1 * w;
        }
      }
    }
  }

  // L2 energy of each 2x2-cell block, indexed by its top-left cell.
  double block_norm[kHogCells - 1][kHogCells - 1];
  for (int by = 0; by < kHogCells - 1; ++by) {
    for (int bx = 0; bx < kHogCells - 1; ++bx) {
      double sum = 0.0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          for (int b = 0; b < kHogBins; ++b) {
            const double h = hist[by + dy][bx + dx][b];
            sum += h * h;
          }
        }
      }
      block_norm[by][bx] = std::sqrt(sum);
    }
  }

  FeatureVector out(kHogDim);
  Eigen::Index k = 0;
  for (int cy = 0; cy < kHogCells; ++cy) {
    for (int cx = 0; cx < kHogCells; ++cx) {
      // The four blocks containing this cell, by position relative to it:
      // NW, NE, SW, SE. Border cells clamp to the nearest valid block.
      const int left = std::clamp(cx - 1, 0, kHogCells - 2);
      const int right = std::clamp(cx, 0, kHogCells - 2);
      const int up = std::clamp(cy - 1, 0, kHogCells - 2);
      const int down = std::clamp(cy, 0, kHogCells - 2);
      const double norms[kHogBlockCopies] = {
          block_norm[up][left], block_norm[up][right],
          block_norm[down][left], block_norm[down][right]};
      for (double norm : norms) {
        if (norm < kBlockNormFloor) {
          for (int b = 0; b < kHogBins; ++b) out[k++] = 0.0;
        } else {
          for (int b = 0; b < kHogBins; ++b) {
            out[k++] = std::min(hist[cy][cx][b] / norm, kClip);
          }
        }
      }
    }
  }
  return out;
}

} // namespace elda

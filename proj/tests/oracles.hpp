// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: plain loops, no tables, no Eigen
// kernels, so a shared bug with the production code is unlikely.
#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "elda/geometry.hpp"
#include "elda/image.hpp"

namespace oracle {

inline double dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Scalar bilinear resampler (flat weighted sum form).
inline elda::GrayImage resample(const elda::GrayImage& frame,
                                const elda::BoundingBox& box, int out_size) {
  auto pixel = [&](int x, int y) -> double {
    if (x < 0) x = 0;
    if (y < 0) y = 0;
    if (x > frame.width - 1) x = frame.width - 1;
    if (y > frame.height - 1) y = frame.height - 1;
    return frame.at(x, y);
  };
  elda::GrayImage out;
  out.width = out_size;
  out.height = out_size;
  out.pixels.resize(static_cast<std::size_t>(out_size) * out_size);
  for (int oy = 0; oy < out_size; ++oy) {
    for (int ox = 0; ox < out_size; ++ox) {
      const double fx = box.x + (ox + 0.5) * box.w / out_size - 0.5;
      const double fy = box.y + (oy + 0.5) * box.h / out_size - 0.5;
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const double tx = fx - x0;
      const double ty = fy - y0;
      const double v = (1.0 - ty) * ((1.0 - tx) * pixel(x0, y0) +
                                     tx * pixel(x0 + 1, y0)) +
                       ty * ((1.0 - tx) * pixel(x0, y0 + 1) +
                             tx * pixel(x0 + 1, y0 + 1));
      out.at(ox, oy) = static_cast<float>(v);
    }
  }
  return out;
}

/// Brute-force per-pixel HOG over a 64x64 patch: 8x8 cells, 9 bins with
/// centers at k*20deg, hat-function weights in both orientation (mod 180)
/// and cell position, magnitude-weighted; per cell 4 block-normalized
/// copies (NW,NE,SW,SE), L2 block norms clamped-at-border, 1e-12 guard,
/// clip at 0.2.
inline std::vector<double> hog(const elda::GrayImage& patch) {
  constexpr int kCells = 8;
  constexpr int kBins = 9;
  constexpr int kSide = 64;
  double hist[kCells][kCells][kBins] = {};

  for (int y = 0; y < kSide; ++y) {
    for (int x = 0; x < kSide; ++x) {
      const int xm = x > 0 ? x - 1 : 0;
      const int xp = x < kSide - 1 ? x + 1 : kSide - 1;
      const int ym = y > 0 ? y - 1 : 0;
      const int yp = y < kSide - 1 ? y + 1 : kSide - 1;
      const double gx =
          static_cast<double>(patch.at(xp, y)) - patch.at(xm, y);
      const double gy =
          static_cast<double>(patch.at(x, yp)) - patch.at(x, ym);
      const double mag = std::hypot(gx, gy);
      if (mag == 0.0) continue;

      double deg = std::atan2(gy, gx) * 180.0 / M_PI; // (-180, 180]
      while (deg < 0.0) deg += 180.0;
      while (deg >= 180.0) deg -= 180.0;

      for (int b = 0; b < kBins; ++b) {
        // Angular distance from bin center b*20, periodic in 180.
        double dist = std::fabs(deg - 20.0 * b);
        dist = std::min(dist, 180.0 - dist);
        const double wb = 1.0 - dist / 20.0;
        if (wb <= 0.0) continue;
        for (int cy = 0; cy < kCells; ++cy) {
          const double wy = 1.0 - std::fabs(y - (8.0 * cy + 3.5)) / 8.0;
          if (wy <= 0.0) continue;
          for (int cx = 0; cx < kCells; ++cx) {
            const double wx = 1.0 - std::fabs(x - (8.0 * cx + 3.5)) / 8.0;
            if (wx <= 0.0) continue;
            hist[cy][cx][b] += mag * wb * wy * wx;
          }
        }
      }
    }
  }

  auto block_norm = [&](int by, int bx) {
    if (by < 0) by = 0;
    if (bx < 0) bx = 0;
    if (by > kCells - 2) by = kCells - 2;
    if (bx > kCells - 2) bx = kCells - 2;
    double s = 0.0;
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx)
        for (int b = 0; b < kBins; ++b)
          s += hist[by + dy][bx + dx][b] * hist[by + dy][bx + dx][b];
    return std::sqrt(s);
  };

  std::vector<double> out;
  out.reserve(8 * 8 * 4 * 9);
  for (int cy = 0; cy < kCells; ++cy) {
    for (int cx = 0; cx < kCells; ++cx) {
      const int block_at[4][2] = {{cy - 1, cx - 1},
                                  {cy - 1, cx},
                                  {cy, cx - 1},
                                  {cy, cx}}; // NW, NE, SW, SE
      for (const auto& pos : block_at) {
        const double norm = block_norm(pos[0], pos[1]);
        for (int b = 0; b < kBins; ++b) {
          if (norm < 1e-12) {
            out.push_back(0.0);
          } else {
            out.push_back(std::min(hist[cy][cx][b] / norm, 0.2));
          }
        }
      }
    }
  }
  return out;
}

/// Naive two-pass sample statistics with divisor n.
inline void stats(const std::vector<Eigen::VectorXd>& xs,
                  Eigen::VectorXd& mean, Eigen::MatrixXd& cov) {
  const Eigen::Index d = xs.front().size();
  const auto n = static_cast<double>(xs.size());
  mean = Eigen::VectorXd::Zero(d);
  for (const auto& x : xs)
    for (Eigen::Index i = 0; i < d; ++i) mean[i] += x[i];
  for (Eigen::Index i = 0; i < d; ++i) mean[i] /= n;
  cov = Eigen::MatrixXd::Zero(d, d);
  for (const auto& x : xs)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        cov(i, j) += (x[i] - mean[i]) * (x[j] - mean[j]);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) cov(i, j) /= n;
}

/// Gaussian elimination with partial pivoting on dense copies.
inline Eigen::VectorXd solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (piv != col) {
      a.row(col).swap(a.row(piv));
      std::swap(b[col], b[piv]);
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (Eigen::Index c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
    x[r] = s / a(r, r);
  }
  return x;
}

/// Integer points of the stride lattice (multiples of stride) inside the
/// closed disc of the given radius, in ascending dy-then-dx order.
inline std::vector<std::pair<int, int>> disc_offsets(int radius, int stride) {
  std::vector<std::pair<int, int>> points;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx % stride != 0 || dy % stride != 0) continue;
      if (static_cast<long long>(dx) * dx + static_cast<long long>(dy) * dy <=
          static_cast<long long>(radius) * radius) {
        points.emplace_back(dx, dy);
      }
    }
  }
  return points;
}

} // namespace oracle

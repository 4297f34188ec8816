#include <doctest.h>

#include "elda/errors.hpp"
#include "elda/hog.hpp"
#include "elda/rng.hpp"
#include "oracles.hpp"

using namespace elda;

namespace {

GrayImage quantized_patch(Rng& rng, int max_level = 256) {
  GrayImage img;
  img.width = kPatchSize;
  img.height = kPatchSize;
  img.pixels.resize(static_cast<std::size_t>(kPatchSize) * kPatchSize);
  for (auto& p : img.pixels) {
    p = static_cast<float>(
        static_cast<double>(uniform_index(rng, max_level)) / 256.0);
  }
  return img;
}

} // namespace

TEST_CASE("extract_hog validates the patch size") {
  CHECK_THROWS_AS(extract_hog(GrayImage::filled(63, 64, 0.5f)), InvalidInput);
  CHECK_THROWS_AS(extract_hog(GrayImage::filled(64, 63, 0.5f)), InvalidInput);
  CHECK_THROWS_AS(extract_hog(GrayImage{}), InvalidInput);
}

TEST_CASE("extract_hog output has dimension 2304 for any valid patch") {
  Rng rng(21);
  for (int i = 0; i < 5; ++i) {
    const FeatureVector v = extract_hog(quantized_patch(rng));
    CHECK(v.size() == 2304);
    CHECK(v.size() == kHogDim);
  }
}

TEST_CASE("constant patch maps to the zero vector") {
  for (float c : {0.0f, 0.25f, 1.0f}) {
    const FeatureVector v =
        extract_hog(GrayImage::filled(kPatchSize, kPatchSize, c));
    CHECK(v.isZero(0.0));
    CHECK(v.allFinite());
  }
}

TEST_CASE("sub-floor block energy normalizes to zero, never NaN") {
  GrayImage patch = GrayImage::filled(kPatchSize, kPatchSize, 0.0f);
  patch.at(32, 32) = 1e-15f; // gradients ~1e-15, block norms < 1e-12
  const FeatureVector v = extract_hog(patch);
  CHECK(v.allFinite());
  CHECK(v.isZero(0.0));
}

TEST_CASE("vertical ramp concentrates all energy in the 0-degree bin") {
  GrayImage ramp;
  ramp.width = kPatchSize;
  ramp.height = kPatchSize;
  ramp.pixels.resize(static_cast<std::size_t>(kPatchSize) * kPatchSize);
  for (int y = 0; y < kPatchSize; ++y) {
    for (int x = 0; x < kPatchSize; ++x) {
      ramp.at(x, y) = static_cast<float>(x) / kPatchSize;
    }
  }
  const FeatureVector v = extract_hog(ramp);

  double bin0_energy = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k % kHogBins == 0) {
      bin0_energy += v[k];
    } else {
      CHECK(v[k] == 0.0); // no other orientation receives any vote
    }
  }
  CHECK(bin0_energy > 0.0);

  // Interior cells: per-cell histogram 2.0 (64 pixels x gradient 1/32),
  // block norm sqrt(4*2^2) = 4, ratio 0.5, clipped at 0.2.
  // Cell (3,3) copy 0 (NW block), bin 0:
  const Eigen::Index idx = ((3 * 8 + 3) * 4 + 0) * 9 + 0;
  CHECK(v[idx] == 0.2);

  const auto got = extract_hog(ramp);
  const auto want = oracle::hog(ramp);
  for (Eigen::Index k = 0; k < got.size(); ++k) {
    CHECK(std::fabs(got[k] - want[static_cast<std::size_t>(k)]) <= 1e-10);
  }
}

TEST_CASE("photometric shift leaves the feature bit-identical") {
  Rng rng(22);
  // Pixels on the k/256 lattice shifted by m/256 stay exact in float, so
  // gradients and therefore features must not change at all.
  GrayImage patch = quantized_patch(rng, 200);
  GrayImage shifted = patch;
  for (auto& p : shifted.pixels) p += 51.0f / 256.0f;

  const FeatureVector a = extract_hog(patch);
  const FeatureVector b = extract_hog(shifted);
  REQUIRE(a.size() == b.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    CHECK(a[k] == b[k]);
  }
}

TEST_CASE("every output value lies in [0, 0.2]") {
  Rng rng(23);
  for (int i = 0; i < 5; ++i) {
    const FeatureVector v = extract_hog(quantized_patch(rng));
    CHECK(v.minCoeff() >= 0.0);
    CHECK(v.maxCoeff() <= 0.2);
  }
}

TEST_CASE("extract_hog matches the per-pixel oracle on random patches") {
  Rng rng(24);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const GrayImage patch = quantized_patch(rng);
    const FeatureVector got = extract_hog(patch);
    const auto want = oracle::hog(patch);
    REQUIRE(want.size() == static_cast<std::size_t>(got.size()));
    for (Eigen::Index k = 0; k < got.size(); ++k) {
      worst = std::max(worst,
                       std::fabs(got[k] - want[static_cast<std::size_t>(k)]));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("diagonal ramp splits energy between the two 45-degree bins") {
  // Gradient direction 45 deg falls between bin centers 40 and 60, so only
  // bins 2 and 3 may receive votes.
  GrayImage ramp;
  ramp.width = kPatchSize;
  ramp.height = kPatchSize;
  ramp.pixels.resize(static_cast<std::size_t>(kPatchSize) * kPatchSize);
  for (int y = 0; y < kPatchSize; ++y) {
    for (int x = 0; x < kPatchSize; ++x) {
      ramp.at(x, y) = static_cast<float>(x + y) / (4 * kPatchSize);
    }
  }
  const FeatureVector v = extract_hog(ramp);
  CHECK(v.maxCoeff() > 0.0);
  // Border pixels see asymmetric differences (e.g. atan2(2,1)) that land
  // in bins 1 and 4, but only border cells receive those votes; interior
  // cells must be pure.
  for (int cy = 1; cy <= 6; ++cy) {
    for (int cx = 1; cx <= 6; ++cx) {
      double cell_energy = 0.0;
      for (int copy = 0; copy < kHogBlockCopies; ++copy) {
        for (int bin = 0; bin < kHogBins; ++bin) {
          const double val = v[((cy * 8 + cx) * 4 + copy) * 9 + bin];
          cell_energy += val;
          if (bin != 2 && bin != 3) CHECK(val == 0.0);
        }
      }
      CHECK(cell_energy > 0.0);
    }
  }
}

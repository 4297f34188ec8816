#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "elda/errors.hpp"
#include "elda/image.hpp"
#include "elda/image_io.hpp"
#include "elda/rng.hpp"
#include "oracles.hpp"

using namespace elda;

namespace {

/// Random frame whose pixels sit on the k/256 lattice, so sums and
/// differences of pixel values are exact in float.
GrayImage quantized_noise(int w, int h, Rng& rng, int max_level = 256) {
  GrayImage img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  for (auto& p : img.pixels) {
    p = static_cast<float>(
        static_cast<double>(uniform_index(rng, max_level)) / 256.0);
  }
  return img;
}

} // namespace

TEST_CASE("luminance formula is exact on the primary colors") {
  CHECK(luminance(1.0, 1.0, 1.0) == 1.0);
  CHECK(luminance(0.0, 0.0, 0.0) == 0.0);
  CHECK(luminance(1.0, 0.0, 0.0) == 0.299);
  CHECK(luminance(0.0, 1.0, 0.0) == 0.587);
  CHECK(luminance(0.0, 0.0, 1.0) == 0.114);
}

TEST_CASE("to_gray converts 8-bit RGB exactly") {
  RgbImage rgb;
  rgb.width = 2;
  rgb.height = 1;
  rgb.pixels = {255, 255, 255, 255, 0, 0};
  const GrayImage g = to_gray(rgb);
  CHECK(g.pixels[0] == 1.0f);
  CHECK(g.pixels[1] == static_cast<float>(0.299));

  RgbImage gray_pixel;
  gray_pixel.width = 1;
  gray_pixel.height = 1;
  gray_pixel.pixels = {128, 128, 128};
  CHECK(to_gray(gray_pixel).pixels[0] == static_cast<float>(128.0 / 255.0));
}

TEST_CASE("to_gray rejects malformed input") {
  CHECK_THROWS_AS(to_gray(RgbImage{}), InvalidInput);
  RgbImage bad;
  bad.width = 2;
  bad.height = 2;
  bad.pixels = {1, 2, 3}; // wrong length
  CHECK_THROWS_AS(to_gray(bad), InvalidInput);
}

TEST_CASE("extract_patch of an aligned 64x64 box copies pixels") {
  Rng rng(11);
  const GrayImage frame = quantized_noise(100, 90, rng);
  const GrayImage patch = extract_patch(frame, {10, 20, 64, 64});
  REQUIRE(patch.width == 64);
  REQUIRE(patch.height == 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      CHECK(patch.at(x, y) == frame.at(10 + x, 20 + y));
    }
  }
}

TEST_CASE("extract_patch of a constant region is exactly constant") {
  const float c = 0.3f;
  const GrayImage frame = GrayImage::filled(200, 200, c);
  SUBCASE("downscale 128x128 -> 64x64") {
    const GrayImage patch = extract_patch(frame, {30, 40, 128, 128});
    for (float v : patch.pixels) CHECK(v == c);
  }
  SUBCASE("box partially outside the frame") {
    const GrayImage patch = extract_patch(frame, {-50, -50, 128, 128});
    for (float v : patch.pixels) CHECK(v == c);
  }
  SUBCASE("fractional box position and scale") {
    const GrayImage patch = extract_patch(frame, {10.37, 20.61, 77.3, 41.9});
    for (float v : patch.pixels) CHECK(v == c);
  }
}

TEST_CASE("extract_patch matches the scalar resampling oracle") {
  Rng rng(12);
  const GrayImage frame = quantized_noise(50, 40, rng);
  const BoundingBox boxes[] = {
      {-16, 8, 32, 32},   // half off the left edge
      {5.5, 3.25, 17.8, 29.1},
      {40, 30, 32, 32},   // overhangs bottom-right
      {-10, -10, 80, 80}, // larger than the frame
  };
  for (const BoundingBox& box : boxes) {
    CAPTURE(box.x);
    CAPTURE(box.y);
    const GrayImage got = extract_patch(frame, box);
    const GrayImage want = oracle::resample(frame, box, 64);
    for (std::size_t i = 0; i < got.pixels.size(); ++i) {
      CHECK(got.pixels[i] ==
            doctest::Approx(want.pixels[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("extract_patch edge replication repeats the border column") {
  Rng rng(13);
  const GrayImage frame = quantized_noise(32, 32, rng);
  // A box entirely left of the frame samples only column 0.
  const GrayImage patch = extract_patch(frame, {-200, 0, 32, 32}, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      CHECK(patch.at(x, y) == frame.at(0, y));
    }
  }
}

TEST_CASE("extract_patch rejects degenerate input") {
  const GrayImage frame = GrayImage::filled(10, 10, 0.5f);
  CHECK_THROWS_AS(extract_patch(frame, {0, 0, 0, 10}), InvalidInput);
  CHECK_THROWS_AS(extract_patch(frame, {0, 0, 10, -1}), InvalidInput);
  CHECK_THROWS_AS(extract_patch(frame, {0, 0, 5, 5}, 0), InvalidInput);
  CHECK_THROWS_AS(extract_patch(GrayImage{}, {0, 0, 5, 5}), InvalidInput);
}

TEST_CASE("at_clamped replicates the border") {
  GrayImage img;
  img.width = 2;
  img.height = 2;
  img.pixels = {0.1f, 0.2f, 0.3f, 0.4f};
  CHECK(img.at_clamped(-5, 0) == 0.1f);
  CHECK(img.at_clamped(7, 0) == 0.2f);
  CHECK(img.at_clamped(0, 9) == 0.3f);
  CHECK(img.at_clamped(99, 99) == 0.4f);
}

TEST_CASE("PGM save/load round-trips 255-level images bit-exactly") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "elda_pgm_test";
  fs::create_directories(dir);
  const fs::path file = dir / "img.pgm";

  Rng rng(14);
  GrayImage img;
  img.width = 33;
  img.height = 17;
  img.pixels.resize(33 * 17);
  for (auto& p : img.pixels) {
    p = static_cast<float>(
        static_cast<double>(uniform_index(rng, 256)) / 255.0);
  }
  save_pgm(img, file);
  const GrayImage back = load_image_gray(file);
  REQUIRE(back.width == img.width);
  REQUIRE(back.height == img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    CHECK(back.pixels[i] == img.pixels[i]);
  }
  fs::remove_all(dir);
}

TEST_CASE("load_image_gray error handling") {
  namespace fs = std::filesystem;
  CHECK_THROWS_AS(load_image_gray("/nonexistent/nowhere.pgm"), IoError);

  const fs::path dir = fs::temp_directory_path() / "elda_io_test";
  fs::create_directories(dir);
  const fs::path bad = dir / "bad.pgm";
  std::ofstream(bad) << "not a pgm at all";
  CHECK_THROWS_AS(load_image_gray(bad), FormatError);

  const fs::path unknown = dir / "file.tiff";
  std::ofstream(unknown) << "II*";
  CHECK_THROWS_AS(load_image_gray(unknown), FormatError);
  fs::remove_all(dir);
}

TEST_CASE("list_frames sorts by filename and filters extensions") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "elda_list_test";
  fs::create_directories(dir);
  const GrayImage img = GrayImage::filled(4, 4, 0.5f);
  save_pgm(img, dir / "b.pgm");
  save_pgm(img, dir / "a.pgm");
  std::ofstream(dir / "notes.txt") << "ignored";

  const auto frames = list_frames(dir);
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].filename() == "a.pgm");
  CHECK(frames[1].filename() == "b.pgm");

  CHECK_THROWS_AS(list_frames(dir / "missing"), IoError);
  fs::remove_all(dir);
}

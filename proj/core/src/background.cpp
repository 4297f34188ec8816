#include "elda/background.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>

#include "elda/errors.hpp"
#include "elda/image_io.hpp"
#include "elda/rng.hpp"

namespace elda {

namespace {

constexpr char kMagic[8] = {'E', 'L', 'D', 'A', 'B', 'G', '1', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr int kMinImageSide = 16;

// Scalars are encoded little-endian byte by byte so the format does not
// depend on host endianness.
class Encoder {
public:
  explicit Encoder(std::size_t reserve) { buf_.reserve(reserve); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* data, std::size_t len) {
    buf_.insert(buf_.end(), data, data + len);
  }
  const std::vector<char>& bytes() const { return buf_; }

private:
  std::vector<char> buf_;
};

class Decoder {
public:
  explicit Decoder(std::vector<char> bytes) : buf_(std::move(bytes)) {}

  bool exhausted() const { return pos_ == buf_.size(); }
  bool has(std::size_t n) const { return buf_.size() - pos_ >= n; }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(next()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(next()) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  void raw(char* out, std::size_t len) {
    std::memcpy(out, buf_.data() + pos_, len);
    pos_ += len;
  }

private:
  unsigned char next() { return static_cast<unsigned char>(buf_[pos_++]); }
  std::vector<char> buf_;
  std::size_t pos_ = 0;
};

} // namespace

BackgroundModel batch_stats(const std::vector<FeatureVector>& samples) {
  if (samples.empty()) {
    return {};
  }
  const Eigen::Index d = samples.front().size();
  for (const FeatureVector& s : samples) {
    if (s.size() != d) {
      throw InvalidInput("batch_stats: mixed sample dimensions");
    }
  }
  const auto n = static_cast<std::uint64_t>(samples.size());

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (const FeatureVector& s : samples) mean += s;
  mean /= static_cast<double>(n);

  Eigen::MatrixXd centered(d, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < centered.cols(); ++i) {
    centered.col(i) = samples[static_cast<std::size_t>(i)] - mean;
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered,
                                                 1.0 / static_cast<double>(n));
  cov.triangularView<Eigen::StrictlyUpper>() =
      cov.transpose().triangularView<Eigen::StrictlyUpper>();
  return {std::move(mean), std::move(cov), n};
}

BackgroundModel merge(const BackgroundModel& a, const BackgroundModel& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  if (a.dim() != b.dim()) {
    throw InvalidInput("merge: background models have different dimensions");
  }
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;

  BackgroundModel out;
  out.count = a.count + b.count;
  out.mean = (na * a.mean + nb * b.mean) / n;
  // Pooled second moments recentered at the pooled mean:
  //   [na(cov_a + mean_a mean_a^T) + nb(cov_b + mean_b mean_b^T)]/n
  //   - mean mean^T
  // The rank-1 terms touch only the lower triangle, which is mirrored at
  // the end, so the result is exactly symmetric by construction.
  out.cov = (na / n) * a.cov + (nb / n) * b.cov;
  out.cov.selfadjointView<Eigen::Lower>()
      .rankUpdate(a.mean, na / n)
      .rankUpdate(b.mean, nb / n)
      .rankUpdate(out.mean, -1.0);
  out.cov.triangularView<Eigen::StrictlyUpper>() =
      out.cov.transpose().triangularView<Eigen::StrictlyUpper>();
  return out;
}

BackgroundModel build_offline(
    const std::vector<std::filesystem::path>& image_paths, int num_patches,
    const OfflineBuildOptions& options) {
  if (image_paths.empty()) {
    throw InvalidInput("build_offline: no images given");
  }
  if (num_patches < 2) {
    throw InvalidInput("build_offline: num_patches must be >= 2");
  }
  if (options.patch_size < 1) {
    throw InvalidInput("build_offline: patch_size must be >= 1");
  }

  std::vector<GrayImage> images;
  images.reserve(image_paths.size());
  for (const auto& path : image_paths) {
    GrayImage img = load_image_gray(path); // throws IoError naming the path
    if (img.width < kMinImageSide || img.height < kMinImageSide) {
      std::fprintf(stderr, "warning: skipping %s (smaller than %dx%d)\n",
                   path.string().c_str(), kMinImageSide, kMinImageSide);
      continue;
    }
    images.push_back(std::move(img));
  }
  if (images.empty()) {
    throw InvalidInput("build_offline: no usable images (all smaller than 16x16)");
  }

  std::mt19937_64 rng(options.rng_seed);
  // Accumulate in bounded-memory chunks; chunk merges are exact, so the
  // result equals batch_stats over all patches.
  constexpr int kChunk = 512;
  BackgroundModel model;
  std::vector<FeatureVector> chunk;
  chunk.reserve(std::min(num_patches, kChunk));
  for (int i = 0; i < num_patches; ++i) {
    const GrayImage& img = images[uniform_index(rng, images.size())];
    const double max_scale = std::min(img.width, img.height);
    const double scale = max_scale <= options.patch_size
                             ? max_scale
                             : uniform_in(rng, options.patch_size, max_scale);
    const double x = uniform_in(rng, 0.0, img.width - scale);
    const double y = uniform_in(rng, 0.0, img.height - scale);
    GrayImage patch =
        extract_patch(img, {x, y, scale, scale}, options.patch_size);
    chunk.push_back(extract_hog(patch));
    if (static_cast<int>(chunk.size()) == kChunk) {
      model = merge(model, batch_stats(chunk));
      chunk.clear();
    }
  }
  if (!chunk.empty()) {
    model = merge(model, batch_stats(chunk));
  }
  return model;
}

void save_model(const BackgroundModel& model,
                const std::filesystem::path& path) {
  const auto d = static_cast<std::uint32_t>(model.dim());
  const std::size_t payload =
      sizeof(kMagic) + 4 + 4 + 8 +
      (static_cast<std::size_t>(d) + static_cast<std::size_t>(d) * d) * 8;

  Encoder enc(payload);
  enc.raw(kMagic, sizeof(kMagic));
  enc.u32(kVersion);
  enc.u32(d);
  enc.u64(model.count);
  for (Eigen::Index i = 0; i < model.mean.size(); ++i) {
    enc.f64(model.mean[i]);
  }
  for (Eigen::Index r = 0; r < model.cov.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.cov.cols(); ++c) {
      enc.f64(model.cov(r, c));
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("save_model: cannot open " + path.string() + " for writing");
  }
  out.write(enc.bytes().data(),
            static_cast<std::streamsize>(enc.bytes().size()));
  out.flush();
  if (!out) {
    throw IoError("save_model: write failed for " + path.string());
  }
}

BackgroundModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) {
    throw IoError("load_model: cannot open " + path.string());
  }
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<char> bytes(size);
  in.read(bytes.data(), static_cast<std::streamsize>(size));
  if (!in) {
    throw IoError("load_model: read failed for " + path.string());
  }

  Decoder dec(std::move(bytes));
  char magic[8] = {};
  if (dec.has(sizeof(magic))) dec.raw(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("load_model: bad magic (expected \"ELDABG1\\0\") in " +
                      path.string());
  }
  if (!dec.has(4 + 4 + 8)) {
    throw FormatError("load_model: truncated header in " + path.string());
  }
  const std::uint32_t version = dec.u32();
  if (version != kVersion) {
    throw FormatError("load_model: unsupported version " +
                      std::to_string(version) + " in " + path.string());
  }
  const std::uint32_t d = dec.u32();
  const std::uint64_t n = dec.u64();
  if (d > (1u << 20)) {
    throw FormatError("load_model: implausible dimension " +
                      std::to_string(d) + " in " + path.string());
  }
  const std::size_t want =
      (static_cast<std::size_t>(d) + static_cast<std::size_t>(d) * d) * 8;
  if (!dec.has(want)) {
    throw FormatError("load_model: truncated file " + path.string());
  }

  BackgroundModel model;
  model.count = n;
  model.mean.resize(d);
  model.cov.resize(d, d);
  for (std::uint32_t i = 0; i < d; ++i) {
    model.mean[i] = dec.f64();
  }
  for (std::uint32_t r = 0; r < d; ++r) {
    for (std::uint32_t c = 0; c < d; ++c) {
      model.cov(r, c) = dec.f64();
    }
  }
  if (!dec.exhausted()) {
    throw FormatError("load_model: trailing data in " + path.string());
  }
  return model;
}

} // namespace elda

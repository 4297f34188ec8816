// elda: exemplar-LDA visual tracker command line.
//
// Subcommands:
//   bg-build  harvest random patches from an image directory into a
//             background model file
//   track     run the tracker over a frame directory
//   eval      score a result file against ground truth (CLE / success rate)
//   synth     generate a deterministic synthetic test sequence

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include <CLI11.hpp>

#include "elda/background.hpp"
#include "elda/errors.hpp"
#include "elda/image_io.hpp"
#include "elda/metrics.hpp"
#include "elda/result_io.hpp"
#include "elda/synthetic.hpp"
#include "elda/tracker.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

elda::BoundingBox parse_box(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
  std::string rest;
  if (!(in >> x >> y >> w >> h) || (in >> rest)) {
    throw elda::InvalidInput("expected an \"x,y,w,h\" box, got \"" + text +
                             "\"");
  }
  if (!(w > 0.0) || !(h > 0.0)) {
    throw elda::InvalidInput("box size must be positive, got \"" + text +
                             "\"");
  }
  return {x, y, w, h};
}

/// Shared tracker settings; filled from flags and/or a key=value config
/// file (flags win).
void add_tracker_options(CLI::App& cmd, elda::TrackerConfig& config,
                         std::string& detect_area) {
  cmd.add_option("--detect-radius,--detect_radius", config.detect_radius,
                 "Search radius around the previous center, pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--search-stride,--search_stride", config.search_stride,
                 "Candidate grid spacing, pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--detect-area,--detect_area", detect_area,
                 "Search region shape: disc or square")
      ->capture_default_str()
      ->check(CLI::IsMember({"disc", "square"}));
  cmd.add_option("--ring-inner,--ring_inner", config.ring_inner,
                 "Inner radius of the negative-sampling ring, pixels")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--ring-outer,--ring_outer", config.ring_outer,
                 "Outer radius of the negative-sampling ring, pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--negatives-per-frame,--negatives_per_frame",
                 config.negatives_per_frame,
                 "Online negatives sampled per frame")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--time-window,--time_window", config.time_window,
                 "Frames a short-term detector stays in the ensemble")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--admission-interval,--admission_interval",
                 config.admission_interval,
                 "Minimum frames between short-term admissions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--regularization", config.regularization,
                 "Covariance ridge term; <= 0 selects the trace-scaled "
                 "default")
      ->capture_default_str();
  cmd.add_option("--online-weight-multiplier,--online_weight_multiplier",
                 config.online_weight_multiplier,
                 "Effective sample weight of each online negative batch")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--rng-seed,--rng_seed", config.rng_seed,
                 "Seed for online negative sampling")
      ->capture_default_str();
}

int cmd_bg_build(const std::string& image_dir, const std::string& out_path,
                 int num_patches, int patch_size, std::uint64_t seed) {
  const auto paths = elda::list_frames(image_dir);
  if (paths.empty()) {
    throw elda::InvalidInput("no images found in " + image_dir);
  }
  elda::OfflineBuildOptions options;
  options.patch_size = patch_size;
  options.rng_seed = seed;
  const elda::BackgroundModel model =
      elda::build_offline(paths, num_patches, options);
  elda::save_model(model, out_path);
  std::cerr << "wrote " << out_path << " (n=" << model.count
            << ", d=" << model.dim() << ")\n";
  return 0;
}

int cmd_track(const std::string& image_dir, const std::string& bg_path,
              const std::string& out_path, const std::string& gt_path,
              const std::string& init_text, int start_frame,
              const std::string& save_bg_path,
              const elda::TrackerConfig& config) {
  auto paths = elda::list_frames(image_dir);
  if (static_cast<std::size_t>(start_frame) > paths.size()) {
    throw elda::InvalidInput(
        "start frame " + std::to_string(start_frame) + " exceeds the " +
        std::to_string(paths.size()) + " frames in " + image_dir);
  }
  paths.erase(paths.begin(), paths.begin() + (start_frame - 1));
  if (paths.empty()) {
    throw elda::InvalidInput("no frames found in " + image_dir);
  }

  elda::GroundTruth gt;
  if (!gt_path.empty()) {
    gt = elda::load_ground_truth(gt_path);
    if (gt.boxes.size() != paths.size()) {
      throw elda::InvalidInput(
          gt_path + " has " + std::to_string(gt.boxes.size()) +
          " boxes but the sequence has " + std::to_string(paths.size()) +
          " frames (after start-frame skip)");
    }
  }

  elda::BoundingBox init_box;
  if (!init_text.empty()) {
    init_box = parse_box(init_text);
  } else if (!gt.boxes.empty()) {
    init_box = gt.boxes.front();
  } else {
    throw elda::InvalidInput("either --init or --gt must provide the "
                             "first-frame box");
  }

  elda::BackgroundModel background = elda::load_model(bg_path);
  const elda::GrayImage first = elda::load_image_gray(paths.front());
  elda::Tracker tracker(first, init_box, std::move(background), config);

  std::vector<elda::TrackResult> results;
  results.reserve(paths.size());
  results.push_back(
      elda::TrackResult{1, tracker.current_box(), tracker.last_score()});
  for (std::size_t i = 1; i < paths.size(); ++i) {
    const elda::GrayImage frame = elda::load_image_gray(paths[i]);
    results.push_back(tracker.track(frame));
  }

  elda::save_results(results, out_path);
  if (!save_bg_path.empty()) {
    elda::save_model(tracker.background(), save_bg_path);
  }
  if (tracker.negative_shortfall() > 0) {
    std::cerr << "warning: " << tracker.negative_shortfall()
              << " online negatives could not be placed in-frame\n";
  }

  if (!gt.boxes.empty()) {
    const elda::Report r = elda::report(results, gt);
    std::cout << "cle," << fmt(r.cle) << "\n";
    std::cout << "sr," << fmt(r.sr) << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& results_path, const std::string& gt_path,
             const std::string& per_frame_path, double threshold) {
  const std::vector<elda::TrackResult> results =
      elda::load_results(results_path);
  const elda::GroundTruth gt = elda::load_ground_truth(gt_path);
  const elda::Report r = elda::report(results, gt);
  const double sr = elda::success_rate(results, gt, threshold);

  if (!per_frame_path.empty()) {
    std::ofstream out(per_frame_path);
    if (!out) {
      throw elda::IoError("cannot open " + per_frame_path + " for writing");
    }
    for (std::size_t i = 0; i < r.per_frame_errors.size(); ++i) {
      out << results[i].frame << ',' << fmt(r.per_frame_errors[i]) << '\n';
    }
  }

  std::cout << "cle," << fmt(r.cle) << "\n";
  std::cout << "sr," << fmt(sr) << "\n";
  return 0;
}

int cmd_synth(const std::string& out_dir, int count,
              elda::SyntheticSpec spec, const std::string& motion,
              double speed) {
  if (count < 1) throw elda::InvalidInput("count must be >= 1");
  const double cx = 0.5 * spec.frame_width;
  const double cy = 0.5 * spec.frame_height;
  // Largest center excursion that keeps the object inside the frame, with
  // a one-pixel snap margin.
  const double ax =
      0.5 * (spec.frame_width - spec.object_width) - 2.0;
  const double ay =
      0.5 * (spec.frame_height - spec.object_height) - 2.0;
  if (ax < 0.0 || ay < 0.0) {
    throw elda::InvalidInput("object does not fit in the frame");
  }

  spec.trajectory.clear();
  spec.trajectory.reserve(static_cast<std::size_t>(count));
  if (motion == "static") {
    for (int t = 0; t < count; ++t) spec.trajectory.push_back({cx, cy});
  } else if (motion == "linear") {
    // Diagonal 3-4-5 direction with reflection off the margins.
    auto reflect = [](double p, double lo, double hi) {
      const double span = hi - lo;
      if (span <= 0.0) return lo;
      double q = std::fmod(p - lo, 2.0 * span);
      if (q < 0.0) q += 2.0 * span;
      return lo + (q <= span ? q : 2.0 * span - q);
    };
    for (int t = 0; t < count; ++t) {
      spec.trajectory.push_back(
          {reflect(cx - ax + 0.8 * speed * t, cx - ax, cx + ax),
           reflect(cy - ay + 0.6 * speed * t, cy - ay, cy + ay)});
    }
  } else { // sine
    // Lissajous path; the angular rate is chosen so the per-frame step
    // never exceeds `speed`.
    const double omega = speed / std::sqrt(ax * ax + 4.0 * ay * ay);
    const double phase = std::numbers::pi / 3.0;
    for (int t = 0; t < count; ++t) {
      spec.trajectory.push_back(
          {cx + ax * std::sin(omega * t),
           cy + ay * std::sin(2.0 * omega * t + phase)});
    }
  }

  const elda::SyntheticSequence seq = elda::make_synthetic_sequence(spec);

  fs::create_directories(out_dir);
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05zu.pgm", i + 1);
    elda::save_pgm(seq.frames[i], fs::path(out_dir) / name);
  }
  std::ofstream gt_out(fs::path(out_dir) / "gt.txt");
  if (!gt_out) {
    throw elda::IoError("cannot write ground truth in " + out_dir);
  }
  for (const elda::BoundingBox& b : seq.truth.boxes) {
    gt_out << fmt(b.x) << ',' << fmt(b.y) << ',' << fmt(b.w) << ','
           << fmt(b.h) << '\n';
  }
  std::cerr << "wrote " << seq.frames.size() << " frames + gt.txt to "
            << out_dir << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
#if defined(__GLIBC__)
  // The covariance matrices are ~42MB; keep them on the heap for reuse
  // instead of cycling fresh mmap pages every frame.
  mallopt(M_MMAP_THRESHOLD, 1 << 30);
#endif

  CLI::App app{"elda: exemplar-LDA visual tracker"};
  app.require_subcommand(1);

  // bg-build
  auto* bg = app.add_subcommand(
      "bg-build", "Build an offline background model from an image "
                  "directory");
  std::string bg_images, bg_out;
  int bg_patches = 1000;
  int bg_patch_size = 64;
  std::uint64_t bg_seed = 0;
  bg->add_option("--images", bg_images, "Directory of background images")
      ->required();
  bg->add_option("--out", bg_out, "Output model file")->required();
  bg->add_option("--num-patches,--num_patches", bg_patches,
                 "Random patches to harvest")
      ->capture_default_str()
      ->check(CLI::Range(2, 1000000000));
  bg->add_option("--patch-size,--patch_size", bg_patch_size,
                 "Patch side length before HOG encoding, pixels")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bg->add_option("--seed", bg_seed, "Patch sampling seed")
      ->capture_default_str();

  // track
  auto* tr = app.add_subcommand("track", "Track an object over a frame "
                                         "directory");
  std::string tr_images, tr_bg, tr_out, tr_gt, tr_init, tr_save_bg;
  int tr_start_frame = 1;
  elda::TrackerConfig tr_config;
  std::string tr_area = "disc";
  tr->add_option("--images", tr_images,
                 "Directory of frames, tracked in sorted filename order")
      ->required();
  tr->add_option("--bg", tr_bg, "Background model file from bg-build")
      ->required();
  tr->add_option("--out", tr_out,
                 "Result file: one \"frame,x,y,w,h,score\" line per frame "
                 "plus a \"# frames=N mean_score=S\" footer")
      ->required();
  tr->add_option("--gt", tr_gt,
                 "Ground truth, one \"x,y,w,h\" line per tracked frame; "
                 "enables the cle/sr summary");
  tr->add_option("--init", tr_init,
                 "First-frame box \"x,y,w,h\" (default: first --gt line)");
  tr->add_option("--start-frame,--start_frame", tr_start_frame,
                 "1-based index of the first tracked frame; earlier files "
                 "are skipped and ground truth aligns with the remainder")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  tr->add_option("--save-bg,--save_bg", tr_save_bg,
                 "Write the updated background model here after the run");
  add_tracker_options(*tr, tr_config, tr_area);
  tr->set_config("--config", "",
                 "Flat key=value file holding any of these options; "
                 "command-line flags override it");

  // eval
  auto* ev = app.add_subcommand(
      "eval", "Evaluate a result file against ground truth");
  std::string ev_results, ev_gt, ev_per_frame;
  double ev_threshold = 0.5;
  ev->add_option("--results", ev_results, "Result file from track")
      ->required();
  ev->add_option("--gt", ev_gt, "Ground truth file")->required();
  ev->add_option("--per-frame,--per_frame", ev_per_frame,
                 "Write per-frame center errors here as \"frame,error\" "
                 "lines");
  ev->add_option("--threshold", ev_threshold,
                 "Overlap threshold; a frame succeeds when IoU is strictly "
                 "greater")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));

  // synth
  auto* sy = app.add_subcommand(
      "synth", "Generate a deterministic synthetic sequence");
  std::string sy_out, sy_motion = "sine";
  int sy_count = 200;
  double sy_speed = 3.0;
  elda::SyntheticSpec sy_spec;
  sy_spec.noise_sigma = 0.02;
  sy->add_option("--out", sy_out, "Output directory (PGM frames + gt.txt)")
      ->required();
  sy->add_option("--count", sy_count, "Number of frames")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sy->add_option("--frame-width,--frame_width", sy_spec.frame_width, "")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sy->add_option("--frame-height,--frame_height", sy_spec.frame_height, "")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sy->add_option("--object-width,--object_width", sy_spec.object_width, "")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sy->add_option("--object-height,--object_height", sy_spec.object_height,
                 "")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sy->add_option("--noise-sigma,--noise_sigma", sy_spec.noise_sigma,
                 "Per-pixel Gaussian noise level")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sy->add_option("--background-level,--background_level",
                 sy_spec.background_level, "Flat background intensity")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sy->add_option("--texture-seed,--texture_seed", sy_spec.texture_seed, "")
      ->capture_default_str();
  sy->add_option("--noise-seed,--noise_seed", sy_spec.noise_seed, "")
      ->capture_default_str();
  sy->add_option("--motion", sy_motion, "Trajectory: static, linear, sine")
      ->capture_default_str()
      ->check(CLI::IsMember({"static", "linear", "sine"}));
  sy->add_option("--speed", sy_speed, "Upper bound on px moved per frame")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
    if (bg->parsed()) {
      return cmd_bg_build(bg_images, bg_out, bg_patches, bg_patch_size,
                          bg_seed);
    }
    if (tr->parsed()) {
      tr_config.detect_area = tr_area == "square" ? elda::DetectArea::Square
                                                  : elda::DetectArea::Disc;
      return cmd_track(tr_images, tr_bg, tr_out, tr_gt, tr_init,
                       tr_start_frame, tr_save_bg, tr_config);
    }
    if (ev->parsed()) {
      return cmd_eval(ev_results, ev_gt, ev_per_frame, ev_threshold);
    }
    if (sy->parsed()) {
      return cmd_synth(sy_out, sy_count, sy_spec, sy_motion, sy_speed);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

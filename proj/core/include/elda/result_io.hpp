#pragma once

#include <filesystem>
#include <vector>

#include "elda/metrics.hpp"

namespace elda {

/// Ground-truth file: one "x,y,w,h" line per frame (commas or whitespace),
/// 1-based frame order matching sorted image filenames. Blank lines are
/// ignored. Throws FormatError citing the offending line number.
GroundTruth load_ground_truth(const std::filesystem::path& path);

/// Result file: one "frame,x,y,w,h,score" line per frame plus a trailing
/// "# frames=<n> mean_score=<s>" summary footer. Numbers are written with
/// up to 10 significant digits, so identical runs produce identical bytes.
void save_results(const std::vector<TrackResult>& results,
                  const std::filesystem::path& path);

/// Reads a result file back; '#' comment lines and blank lines are
/// skipped. Throws FormatError citing the offending line number.
std::vector<TrackResult> load_results(const std::filesystem::path& path);

} // namespace elda

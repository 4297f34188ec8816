#include "elda/result_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "elda/errors.hpp"

namespace elda {

namespace {

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

/// Splits a line on commas and/or whitespace and parses every field as a
/// double. Throws FormatError naming the file and 1-based line number.
std::vector<double> parse_fields(const std::string& line, std::size_t lineno,
                                 const std::filesystem::path& path) {
  std::string normalized = line;
  for (char& c : normalized) {
    if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<double> fields;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw FormatError(path.string() + ": malformed number '" + token +
                        "' on line " + std::to_string(lineno));
    }
    fields.push_back(value);
  }
  return fields;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

} // namespace

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open ground truth " + path.string());
  }
  GroundTruth gt;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    const std::vector<double> f = parse_fields(line, lineno, path);
    if (f.size() != 4) {
      throw FormatError(path.string() + ": expected 4 fields (x,y,w,h) on "
                        "line " + std::to_string(lineno) + ", got " +
                        std::to_string(f.size()));
    }
    gt.boxes.push_back(BoundingBox{f[0], f[1], f[2], f[3]});
  }
  return gt;
}

void save_results(const std::vector<TrackResult>& results,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  double score_sum = 0.0;
  for (const TrackResult& r : results) {
    out << r.frame << ',' << format_double(r.box.x) << ','
        << format_double(r.box.y) << ',' << format_double(r.box.w) << ','
        << format_double(r.box.h) << ',' << format_double(r.score) << '\n';
    score_sum += r.score;
  }
  const double mean_score =
      results.empty() ? 0.0 : score_sum / static_cast<double>(results.size());
  out << "# frames=" << results.size()
      << " mean_score=" << format_double(mean_score) << '\n';
  out.flush();
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::vector<TrackResult> load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open results " + path.string());
  }
  std::vector<TrackResult> results;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    const std::vector<double> f = parse_fields(line, lineno, path);
    if (f.size() != 6) {
      throw FormatError(path.string() + ": expected 6 fields "
                        "(frame,x,y,w,h,score) on line " +
                        std::to_string(lineno) + ", got " +
                        std::to_string(f.size()));
    }
    TrackResult r;
    r.frame = static_cast<int>(f[0]);
    r.box = BoundingBox{f[1], f[2], f[3], f[4]};
    r.score = f[5];
    results.push_back(r);
  }
  return results;
}

} // namespace elda

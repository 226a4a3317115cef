#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kcf/image.hpp"
#include "kcf/pipeline.hpp"

namespace kcf {

/// OTB-style sequence: `img/` holding numbered frames and
/// `groundtruth_rect.txt` with one x,y,w,h line per frame.
struct Sequence {
  std::string name;
  std::vector<std::filesystem::path> frames;
  /// One entry per frame; nullopt marks a frame without a usable annotation.
  std::vector<std::optional<BoundingBox>> truth;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// values[t] = fraction of frames whose center error is <= t pixels,
/// t = 0..max_threshold.
struct PrecisionCurve {
  std::vector<double> values;

  int max_threshold() const noexcept {
    return static_cast<int>(values.size()) - 1;
  }
};

/// Decode a PNG/JPEG frame to gray or RGB.
Image load_image(const std::filesystem::path& path);

/// Parse ground truth text. Fields may be separated by commas, tabs or
/// spaces. Lines of NaN or with a non-positive size become nullopt.
std::vector<std::optional<BoundingBox>> parse_ground_truth(
    std::string_view text, const std::string& source = "ground truth");

Sequence load_sequence(const std::filesystem::path& dir);

/// Every immediate subdirectory of `root` holding a ground-truth file,
/// sorted by name.
std::vector<std::filesystem::path> find_sequences(
    const std::filesystem::path& root);

PrecisionCurve precision_curve(std::span<const Point> predicted,
                               std::span<const Point> truth,
                               int max_threshold = 50);

double precision_at(const PrecisionCurve& curve, int threshold = 20);

struct SequenceResult {
  std::string name;
  std::vector<BoundingBox> predictions;
  PrecisionCurve curve;
  double precision = 0.0;  // at BenchOptions::threshold
  double fps = 0.0;        // frames / seconds spent inside init + track_frame
  std::optional<std::string> failure;
};

struct Report {
  std::vector<SequenceResult> sequences;
  int threshold = 20;
  double mean_precision = 0.0;  // unweighted over successful sequences
  double mean_fps = 0.0;
};

struct BenchOptions {
  int threshold = 20;
  int max_threshold = 50;
  unsigned jobs = 1;
};

/// Track one sequence from its first annotation. Frame decoding is not
/// timed. Throws on unreadable frames.
SequenceResult track_sequence(const Sequence& seq, const TrackerParams& params,
                              const BenchOptions& options = {});

/// Score a tracked sequence against its annotations (frames without
/// annotation are skipped).
void score(SequenceResult& result, const Sequence& seq,
           const BenchOptions& options);

/// Tracks every sequence, up to options.jobs at a time. A failing sequence
/// is recorded in its result and does not stop the run.
Report run_benchmark(std::span<const Sequence> sequences,
                     const TrackerParams& params, const BenchOptions& options);

/// Same, loading each sequence directory inside its worker so that a
/// malformed directory is recorded as a failure too.
Report run_benchmark(std::span<const std::filesystem::path> sequence_dirs,
                     const TrackerParams& params, const BenchOptions& options);

/// report.json plus one <name>.csv (threshold,precision) per sequence.
void write_report(const Report& report, const std::filesystem::path& out_dir);

std::string report_json(const Report& report);

/// One "x,y,w,h" line per box (1-based top-left corner).
void write_boxes(const std::filesystem::path& path,
                 std::span<const BoundingBox> boxes);

}  // namespace kcf

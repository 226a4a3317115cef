#include "kcf/bench.hpp"

#include <json.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace kcf {
namespace fs = std::filesystem;

namespace {

constexpr const char* kGroundTruthFile = "groundtruth_rect.txt";

bool is_frame_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io,
          "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Point center_of(const BoundingBox& b) { return {b.center_x, b.center_y}; }

}  // namespace

Image load_image(const fs::path& path) {
  cv::Mat m = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  require(!m.empty(), ErrorKind::io, "cannot decode image " + path.string());
  if (m.depth() != CV_8U) m.convertTo(m, CV_8U);
  cv::Mat out;
  switch (m.channels()) {
    case 1: out = m; break;
    case 3: cv::cvtColor(m, out, cv::COLOR_BGR2RGB); break;
    case 4: cv::cvtColor(m, out, cv::COLOR_BGRA2RGB); break;
    default:
      fail(ErrorKind::io, "unsupported channel count in " + path.string());
  }
  if (!out.isContinuous()) out = out.clone();
  const auto rows = static_cast<std::size_t>(out.rows);
  const auto cols = static_cast<std::size_t>(out.cols);
  const auto ch = static_cast<std::size_t>(out.channels());
  std::vector<std::uint8_t> pixels(out.data, out.data + rows * cols * ch);
  return Image(rows, cols, ch, std::move(pixels));
}

std::vector<std::optional<BoundingBox>> parse_ground_truth(
    std::string_view text, const std::string& source) {
  std::vector<std::optional<BoundingBox>> boxes;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::replace_if(line.begin(), line.end(),
                    [](char c) { return c == ',' || c == '\t'; }, ' ');
    std::istringstream fields(line);
    std::vector<double> v;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == tok.size(), ErrorKind::parse,
              source + ":" + std::to_string(line_no) + ": '" + tok +
                  "' is not a number");
      v.push_back(value);
    }
    require(v.size() == 4, ErrorKind::parse,
            source + ":" + std::to_string(line_no) + ": expected 4 fields (x,y,w,h), got " +
                std::to_string(v.size()));
    const bool usable = std::all_of(v.begin(), v.end(),
                                    [](double d) { return std::isfinite(d); }) &&
                        v[2] > 0.0 && v[3] > 0.0;
    if (usable)
      boxes.push_back(BoundingBox::from_xywh(v[0], v[1], v[2], v[3]));
    else
      boxes.push_back(std::nullopt);
  }
  require(!boxes.empty(), ErrorKind::parse, source + ": no annotations");
  return boxes;
}

Sequence load_sequence(const fs::path& dir) {
  require(fs::is_directory(dir), ErrorKind::io,
          "sequence directory " + dir.string() + " does not exist");
  const fs::path gt_path = dir / kGroundTruthFile;
  require(fs::is_regular_file(gt_path), ErrorKind::io,
          "missing " + gt_path.string());
  const fs::path img_dir = dir / "img";
  require(fs::is_directory(img_dir), ErrorKind::io,
          "missing frame directory " + img_dir.string());

  Sequence seq;
  seq.name = dir.filename().string();
  if (seq.name.empty()) seq.name = dir.parent_path().filename().string();
  for (const auto& entry : fs::directory_iterator(img_dir))
    if (entry.is_regular_file() && is_frame_file(entry.path()))
      seq.frames.push_back(entry.path());
  std::sort(seq.frames.begin(), seq.frames.end());
  require(seq.frames.size() >= 2, ErrorKind::io,
          img_dir.string() + ": a sequence needs at least 2 frames");

  seq.truth = parse_ground_truth(read_file(gt_path), gt_path.string());
  require(seq.truth.size() <= seq.frames.size(), ErrorKind::parse,
          gt_path.string() + ": " + std::to_string(seq.truth.size()) +
              " annotations for " + std::to_string(seq.frames.size()) +
              " frames");
  require(seq.truth.front().has_value(), ErrorKind::parse,
          gt_path.string() + ": the first frame has no usable box");
  // Trailing frames without a line are treated as unannotated.
  seq.truth.resize(seq.frames.size());
  return seq;
}

std::vector<fs::path> find_sequences(const fs::path& root) {
  require(fs::is_directory(root), ErrorKind::io,
          "dataset root " + root.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory() &&
        fs::is_regular_file(entry.path() / kGroundTruthFile))
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

PrecisionCurve precision_curve(std::span<const Point> predicted,
                               std::span<const Point> truth,
                               int max_threshold) {
  require(predicted.size() == truth.size(), ErrorKind::dimension_mismatch,
          "precision_curve: " + std::to_string(predicted.size()) +
              " predictions vs " + std::to_string(truth.size()) +
              " ground-truth centers");
  require(!predicted.empty(), ErrorKind::invalid_argument,
          "precision_curve: no frames");
  require(max_threshold >= 0, ErrorKind::invalid_argument,
          "precision_curve: negative threshold range");

  std::vector<double> dist(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i)
    dist[i] = std::hypot(predicted[i].x - truth[i].x, predicted[i].y - truth[i].y);

  PrecisionCurve curve;
  curve.values.resize(static_cast<std::size_t>(max_threshold) + 1);
  const auto n = static_cast<double>(dist.size());
  for (int t = 0; t <= max_threshold; ++t) {
    const auto hits = std::count_if(dist.begin(), dist.end(),
                                    [t](double d) { return d <= t; });
    curve.values[static_cast<std::size_t>(t)] = static_cast<double>(hits) / n;
  }
  return curve;
}

double precision_at(const PrecisionCurve& curve, int threshold) {
  require(threshold >= 0 && threshold <= curve.max_threshold(),
          ErrorKind::invalid_argument,
          "precision_at: threshold " + std::to_string(threshold) +
              " outside the curve range 0.." +
              std::to_string(curve.max_threshold()));
  return curve.values[static_cast<std::size_t>(threshold)];
}

SequenceResult track_sequence(const Sequence& seq, const TrackerParams& params,
                              const BenchOptions& options) {
  using clock = std::chrono::steady_clock;
  require(!seq.frames.empty() && !seq.truth.empty() && seq.truth.front(),
          ErrorKind::invalid_argument,
          seq.name + ": sequence has no initial annotation");

  SequenceResult result;
  result.name = seq.name;
  clock::duration tracking{};

  Image frame = load_image(seq.frames.front());
  auto t0 = clock::now();
  TrackerState state = init(frame, *seq.truth.front(), params);
  tracking += clock::now() - t0;
  result.predictions.push_back(state.bbox);

  for (std::size_t i = 1; i < seq.frames.size(); ++i) {
    frame = load_image(seq.frames[i]);
    t0 = clock::now();
    TrackResult r = track_frame(state, frame);
    tracking += clock::now() - t0;
    state = std::move(r.state);
    result.predictions.push_back(r.bbox);
  }
  const double seconds = std::chrono::duration<double>(tracking).count();
  result.fps = seconds > 0.0
                   ? static_cast<double>(result.predictions.size()) / seconds
                   : 0.0;
  score(result, seq, options);
  return result;
}

void score(SequenceResult& result, const Sequence& seq,
           const BenchOptions& options) {
  std::vector<Point> pred, truth;
  for (std::size_t i = 0; i < result.predictions.size() && i < seq.truth.size();
       ++i) {
    if (!seq.truth[i]) continue;
    pred.push_back(center_of(result.predictions[i]));
    truth.push_back(center_of(*seq.truth[i]));
  }
  result.curve = precision_curve(pred, truth, options.max_threshold);
  result.precision = precision_at(result.curve, options.threshold);
}

namespace {

template <typename Task, typename Name>
Report run_parallel(std::size_t count, const Task& task, const Name& name,
                    const BenchOptions& options) {
  require(options.threshold >= 0 && options.threshold <= options.max_threshold,
          ErrorKind::invalid_argument,
          "benchmark: threshold outside the curve range");
  Report report;
  report.threshold = options.threshold;
  report.sequences.resize(count);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        report.sequences[i] = task(i);
      } catch (const std::exception& e) {
        report.sequences[i] = SequenceResult{};
        report.sequences[i].name = name(i);
        report.sequences[i].failure = e.what();
      }
    }
  };
  const unsigned jobs = std::clamp<unsigned>(
      options.jobs, 1u, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  std::size_t ok = 0;
  for (const SequenceResult& r : report.sequences) {
    if (r.failure) continue;
    ++ok;
    report.mean_precision += r.precision;
    report.mean_fps += r.fps;
  }
  if (ok > 0) {
    report.mean_precision /= static_cast<double>(ok);
    report.mean_fps /= static_cast<double>(ok);
  }
  return report;
}

}  // namespace

Report run_benchmark(std::span<const Sequence> sequences,
                     const TrackerParams& params, const BenchOptions& options) {
  require(!sequences.empty(), ErrorKind::invalid_argument,
          "run_benchmark: no sequences");
  params.validate();
  return run_parallel(
      sequences.size(),
      [&](std::size_t i) { return track_sequence(sequences[i], params, options); },
      [&](std::size_t i) { return sequences[i].name; }, options);
}

Report run_benchmark(std::span<const fs::path> sequence_dirs,
                     const TrackerParams& params, const BenchOptions& options) {
  require(!sequence_dirs.empty(), ErrorKind::invalid_argument,
          "run_benchmark: no sequences");
  params.validate();
  return run_parallel(
      sequence_dirs.size(),
      [&](std::size_t i) {
        return track_sequence(load_sequence(sequence_dirs[i]), params, options);
      },
      [&](std::size_t i) { return sequence_dirs[i].filename().string(); },
      options);
}

std::string report_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["threshold"] = report.threshold;
  doc["sequences"] = nlohmann::ordered_json::array();
  for (const SequenceResult& r : report.sequences) {
    nlohmann::ordered_json s;
    s["name"] = r.name;
    if (r.failure) {
      s["failure"] = *r.failure;
    } else {
      s["precision20"] = r.precision;
      s["fps"] = r.fps;
      s["frames"] = r.predictions.size();
      s["curve"] = r.curve.values;
    }
    doc["sequences"].push_back(std::move(s));
  }
  doc["mean_precision20"] = report.mean_precision;
  doc["mean_fps"] = report.mean_fps;
  return doc.dump(2);
}

void write_report(const Report& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "report.json");
    require(static_cast<bool>(out), ErrorKind::io,
            "cannot write " + (out_dir / "report.json").string());
    out << report_json(report) << '\n';
  }
  for (const SequenceResult& r : report.sequences) {
    if (r.failure) continue;
    std::ofstream csv(out_dir / (r.name + ".csv"));
    require(static_cast<bool>(csv), ErrorKind::io,
            "cannot write curve for " + r.name);
    csv << "threshold,precision\n";
    for (std::size_t t = 0; t < r.curve.values.size(); ++t)
      csv << t << ',' << std::setprecision(10) << r.curve.values[t] << '\n';
  }
}

void write_boxes(const fs::path& path, std::span<const BoundingBox> boxes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + path.string());
  out << std::setprecision(10);
  for (const BoundingBox& b : boxes)
    out << b.left() << ',' << b.top() << ',' << b.width << ',' << b.height
        << '\n';
}

}  // namespace kcf

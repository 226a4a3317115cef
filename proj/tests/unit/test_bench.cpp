#include <gtest/gtest.h>

#include <fstream>

#include "kcf/bench.hpp"
#include "sequence_fixture.hpp"
#include "test_util.hpp"
#include "json.hpp"

namespace kcf {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream(p) << s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no kcf::Error thrown";
  return ErrorKind::invalid_argument;
}

TEST(ParseGroundTruth, CommaLineUsesPinnedCenterConvention) {
  const auto boxes = parse_ground_truth("10,20,30,40\n");
  ASSERT_EQ(boxes.size(), 1u);
  ASSERT_TRUE(boxes[0]);
  EXPECT_EQ(boxes[0]->center_x, 24.5);
  EXPECT_EQ(boxes[0]->center_y, 39.5);
  EXPECT_EQ(boxes[0]->width, 30.0);
  EXPECT_EQ(boxes[0]->height, 40.0);
}

TEST(ParseGroundTruth, TabAndSpaceVariantsParseIdentically) {
  const auto comma = parse_ground_truth("10,20,30,40\n1.5,2,3,4\n");
  EXPECT_EQ(parse_ground_truth("10\t20\t30\t40\n1.5\t2\t3\t4\n"), comma);
  EXPECT_EQ(parse_ground_truth("10 20 30 40\r\n1.5, 2, 3, 4"), comma);
}

TEST(ParseGroundTruth, UnusableBoxesBecomeUnannotated) {
  const auto boxes = parse_ground_truth("1,2,3,4\nNaN,NaN,NaN,NaN\n5,6,0,0\n");
  ASSERT_EQ(boxes.size(), 3u);
  EXPECT_TRUE(boxes[0]);
  EXPECT_FALSE(boxes[1]);
  EXPECT_FALSE(boxes[2]);
}

TEST(ParseGroundTruth, ErrorsCarryLineNumbers) {
  try {
    parse_ground_truth("1,2,3,4\n1,2,3\n", "gt.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
    EXPECT_NE(std::string(e.what()).find("gt.txt:2"), std::string::npos) << e.what();
  }
  try {
    parse_ground_truth("1,2,3,4\n1,2,3,4\n1,x,3,4\n", "gt.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("gt.txt:3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(kind_of([] { parse_ground_truth(""); }), ErrorKind::parse);
  EXPECT_EQ(kind_of([] { parse_ground_truth("\n  \n"); }), ErrorKind::parse);
}

TEST(LoadSequence, ReadsFramesAndBoxes) {
  TempDir tmp("seq");
  const auto scene = testing::small_scene(4);
  testing::write_sequence(tmp.path() / "square", scene, '\t');
  const Sequence seq = load_sequence(tmp.path() / "square");
  EXPECT_EQ(seq.name, "square");
  ASSERT_EQ(seq.frames.size(), 4u);
  EXPECT_EQ(seq.frames[0].filename(), "0001.png");
  EXPECT_EQ(seq.frames[3].filename(), "0004.png");
  ASSERT_EQ(seq.truth.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    ASSERT_TRUE(seq.truth[i]);
    EXPECT_NEAR(seq.truth[i]->center_x, scene.truth[i].center_x, 1e-4);
    EXPECT_NEAR(seq.truth[i]->center_y, scene.truth[i].center_y, 1e-4);
  }
  EXPECT_EQ(load_image(seq.frames[2]), scene.frames[2]);
}

TEST(LoadSequence, ShortGroundTruthIsPadded) {
  TempDir tmp("seq");
  testing::write_sequence(tmp.path() / "s", testing::small_scene(3));
  write_text(tmp.path() / "s" / "groundtruth_rect.txt", "10,20,30,40\n");
  const Sequence seq = load_sequence(tmp.path() / "s");
  ASSERT_EQ(seq.truth.size(), 3u);
  EXPECT_TRUE(seq.truth[0]);
  EXPECT_FALSE(seq.truth[1]);
  EXPECT_FALSE(seq.truth[2]);
}

TEST(LoadSequence, Errors) {
  TempDir tmp("seq");
  const fs::path dir = tmp.path() / "s";
  EXPECT_EQ(kind_of([&] { load_sequence(dir); }), ErrorKind::io);
  testing::write_sequence(dir, testing::small_scene(2));

  write_text(dir / "groundtruth_rect.txt", "");
  EXPECT_EQ(kind_of([&] { load_sequence(dir); }), ErrorKind::parse);
  write_text(dir / "groundtruth_rect.txt", "1,2,3,4\n1,2,3,4\n1,2,3,4\n");
  EXPECT_EQ(kind_of([&] { load_sequence(dir); }), ErrorKind::parse);
  write_text(dir / "groundtruth_rect.txt", "0,0,0,0\n1,2,3,4\n");
  EXPECT_EQ(kind_of([&] { load_sequence(dir); }), ErrorKind::parse);

  fs::remove(dir / "groundtruth_rect.txt");
  EXPECT_EQ(kind_of([&] { load_sequence(dir); }), ErrorKind::io);

  write_text(dir / "groundtruth_rect.txt", "1,2,3,4\n");
  fs::remove(dir / "img" / "0002.png");
  EXPECT_EQ(kind_of([&] { load_sequence(dir); }), ErrorKind::io);
}

TEST(LoadImage, RejectsUndecodableFile) {
  TempDir tmp("img");
  write_text(tmp.path() / "bad.png", "not an image");
  EXPECT_EQ(kind_of([&] { load_image(tmp.path() / "bad.png"); }), ErrorKind::io);
}

TEST(FindSequences, ListsSequenceDirectoriesSorted) {
  TempDir tmp("root");
  testing::write_sequence(tmp.path() / "b", testing::small_scene(2));
  testing::write_sequence(tmp.path() / "a", testing::small_scene(2));
  fs::create_directories(tmp.path() / "not_a_sequence");
  const auto found = find_sequences(tmp.path());
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0].filename(), "a");
  EXPECT_EQ(found[1].filename(), "b");
  EXPECT_EQ(kind_of([&] { find_sequences(tmp.path() / "missing"); }), ErrorKind::io);
}

TEST(PrecisionCurve, ExactPredictions) {
  const std::vector<Point> p{{1, 2}, {3, 4}, {5, 6}};
  const PrecisionCurve c = precision_curve(p, p);
  EXPECT_EQ(c.max_threshold(), 50);
  for (double v : c.values) EXPECT_EQ(v, 1.0);
  EXPECT_EQ(precision_at(c), 1.0);
}

TEST(PrecisionCurve, HalfWithinTwenty) {
  const std::vector<Point> gt{{0, 0}, {0, 0}};
  const std::vector<Point> pred{{0, 0}, {30, 0}};
  const PrecisionCurve c = precision_curve(pred, gt);
  EXPECT_EQ(c.values[0], 0.5);
  EXPECT_EQ(c.values[20], 0.5);
  EXPECT_EQ(c.values[29], 0.5);
  EXPECT_EQ(c.values[30], 1.0);
  EXPECT_EQ(precision_at(c, 20), 0.5);
}

TEST(PrecisionCurve, ZeroThresholdCountsExactMatchesOnly) {
  const std::vector<Point> gt{{0, 0}, {0, 0}, {0, 0}};
  const std::vector<Point> pred{{0, 0}, {0.001, 0}, {3, 4}};
  const PrecisionCurve c = precision_curve(pred, gt, 10);
  EXPECT_DOUBLE_EQ(c.values[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.values[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.values[5], 1.0);
}

TEST(PrecisionCurve, MonotoneAndBounded) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d(0.0, 25.0);
  std::vector<Point> pred(200), gt(200);
  for (auto& p : pred) p = {d(rng), d(rng)};
  const PrecisionCurve c = precision_curve(pred, gt);
  for (std::size_t t = 1; t < c.values.size(); ++t) EXPECT_GE(c.values[t], c.values[t - 1]);
  EXPECT_LE(c.values.back(), 1.0);
}

TEST(PrecisionCurve, Errors) {
  const std::vector<Point> one{{0, 0}}, two{{0, 0}, {1, 1}}, none;
  EXPECT_THROW(precision_curve(one, two), Error);
  EXPECT_THROW(precision_curve(none, none), Error);
  EXPECT_THROW(precision_at(precision_curve(one, one, 10), 11), Error);
  EXPECT_THROW(precision_at(precision_curve(one, one, 10), -1), Error);
}

Sequence in_memory(const fs::path& dir, const synthetic::Scene& scene) {
  testing::write_sequence(dir, scene);
  return load_sequence(dir);
}

TEST(RunBenchmark, StaticTwoFrameSequence) {
  TempDir tmp("bench");
  synthetic::SceneSpec spec;
  spec.frames = 2;
  spec.velocity_x = spec.velocity_y = 0.0;
  spec.noise_sigma = 0.0;
  const Sequence seq = in_memory(tmp.path() / "static", synthetic::translating_square(spec));
  const std::vector<Sequence> seqs{seq};
  const Report r = run_benchmark(seqs, make_params(Preset::kcf_raw), BenchOptions{});
  ASSERT_EQ(r.sequences.size(), 1u);
  EXPECT_FALSE(r.sequences[0].failure);
  EXPECT_EQ(r.sequences[0].precision, 1.0);
  EXPECT_EQ(r.sequences[0].predictions.size(), 2u);
  EXPECT_EQ(r.mean_precision, r.sequences[0].precision);
  EXPECT_EQ(r.mean_fps, r.sequences[0].fps);
  EXPECT_GT(r.sequences[0].fps, 0.0);
}

TEST(RunBenchmark, DeterministicAcrossRunsAndWorkerCounts) {
  TempDir tmp("bench");
  std::vector<Sequence> seqs;
  for (std::uint64_t s = 1; s <= 3; ++s)
    seqs.push_back(in_memory(tmp.path() / ("s" + std::to_string(s)), testing::small_scene(6, s)));
  const TrackerParams params = make_params(Preset::kcf_raw);
  const Report a = run_benchmark(seqs, params, BenchOptions{20, 50, 1});
  const Report b = run_benchmark(seqs, params, BenchOptions{20, 50, 3});
  ASSERT_EQ(a.sequences.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.sequences[i].name, seqs[i].name);
    EXPECT_EQ(b.sequences[i].name, seqs[i].name);
    EXPECT_EQ(a.sequences[i].predictions, b.sequences[i].predictions);
    EXPECT_EQ(a.sequences[i].curve.values, b.sequences[i].curve.values);
  }
  EXPECT_EQ(a.mean_precision, b.mean_precision);
}

TEST(RunBenchmark, UnreadableFrameIsRecordedAndRunContinues) {
  TempDir tmp("bench");
  testing::write_sequence(tmp.path() / "good", testing::small_scene(3));
  testing::write_sequence(tmp.path() / "broken", testing::small_scene(3));
  write_text(tmp.path() / "broken" / "img" / "0002.png", "corrupt");
  const std::vector<fs::path> dirs{tmp.path() / "broken", tmp.path() / "good"};
  const Report r = run_benchmark(dirs, make_params(Preset::kcf_raw), BenchOptions{});
  ASSERT_EQ(r.sequences.size(), 2u);
  EXPECT_TRUE(r.sequences[0].failure);
  EXPECT_FALSE(r.sequences[1].failure);
  EXPECT_EQ(r.mean_precision, r.sequences[1].precision);

  const auto json = nlohmann::json::parse(report_json(r));
  EXPECT_EQ(json["threshold"], 20);
  EXPECT_TRUE(json["sequences"][0].contains("failure"));
  EXPECT_EQ(json["sequences"][1]["frames"], 3);
  EXPECT_EQ(json["sequences"][1]["curve"].size(), 51u);
}

TEST(RunBenchmark, ScoringSkipsUnannotatedFrames) {
  TempDir tmp("bench");
  const fs::path dir = tmp.path() / "s";
  testing::write_sequence(dir, testing::small_scene(4));
  Sequence seq = load_sequence(dir);
  SequenceResult r = track_sequence(seq, make_params(Preset::kcf_raw));
  const double all = r.precision;
  seq.truth[2] = std::nullopt;
  seq.truth[3] = std::nullopt;
  score(r, seq, BenchOptions{});
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_GE(r.precision, all);
}

TEST(WriteReport, WritesJsonAndCurves) {
  TempDir tmp("report");
  testing::write_sequence(tmp.path() / "data" / "sq", testing::small_scene(3));
  const std::vector<fs::path> dirs{tmp.path() / "data" / "sq"};
  const Report r = run_benchmark(dirs, make_params(Preset::kcf_raw), BenchOptions{});
  write_report(r, tmp.path() / "out");
  ASSERT_TRUE(fs::is_regular_file(tmp.path() / "out" / "report.json"));
  std::ifstream csv(tmp.path() / "out" / "sq.csv");
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  EXPECT_EQ(header, "threshold,precision");
  EXPECT_EQ(first.rfind("0,", 0), 0u);

  std::ifstream js(tmp.path() / "out" / "report.json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["mean_precision20"], r.mean_precision);
  EXPECT_EQ(j["sequences"][0]["name"], "sq");
}

TEST(WriteBoxes, OneLinePerBox) {
  TempDir tmp("boxes");
  const std::vector<BoundingBox> boxes{BoundingBox::from_xywh(10, 20, 30, 40),
                                       BoundingBox::from_xywh(1.5, 2, 3, 4)};
  write_boxes(tmp.path() / "b.txt", boxes);
  std::ifstream in(tmp.path() / "b.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(parse_ground_truth(ss.str()),
            (std::vector<std::optional<BoundingBox>>{boxes[0], boxes[1]}));
}

}  // namespace
}  // namespace kcf

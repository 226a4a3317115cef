#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include "kcf/selftest.hpp"

namespace kcf::cli {

TrackerParams resolve_params(const RunOptions& opts) {
  FeatureKind feature = FeatureKind::raw;
  std::string kernel = "gaussian";

  if (opts.preset) {
    const auto preset = parse_preset(*opts.preset);
    require(preset.has_value(), ErrorKind::invalid_argument,
            "unknown preset '" + *opts.preset +
                "' (expected kcf-raw, kcf-hog, dcf-raw or dcf-hog)");
    const TrackerParams p = make_params(*preset);
    feature = p.feature.kind;
    kernel = p.kernel.name();
  }
  if (opts.feature) {
    require(*opts.feature == "raw" || *opts.feature == "hog",
            ErrorKind::invalid_argument,
            "unknown feature '" + *opts.feature + "' (expected raw or hog)");
    feature = *opts.feature == "hog" ? FeatureKind::hog : FeatureKind::raw;
  }
  if (opts.kernel) {
    require(*opts.kernel == "gaussian" || *opts.kernel == "linear" ||
                *opts.kernel == "polynomial",
            ErrorKind::invalid_argument,
            "unknown kernel '" + *opts.kernel +
                "' (expected gaussian, linear or polynomial)");
    kernel = *opts.kernel;
  }

  const bool hog = feature == FeatureKind::hog;
  TrackerParams params = make_params(hog ? Preset::kcf_hog : Preset::kcf_raw);

  GaussianNorm norm = GaussianNorm::spatial;
  if (opts.gaussian_norm) {
    require(*opts.gaussian_norm == "spatial" || *opts.gaussian_norm == "elements",
            ErrorKind::invalid_argument,
            "unknown gaussian normalization '" + *opts.gaussian_norm + "'");
    norm = *opts.gaussian_norm == "elements" ? GaussianNorm::elements
                                             : GaussianNorm::spatial;
  }
  if (kernel == "gaussian")
    params.kernel = KernelSpec::gaussian(opts.sigma.value_or(hog ? 0.5 : 0.2), norm);
  else if (kernel == "linear")
    params.kernel = KernelSpec::linear();
  else
    params.kernel = KernelSpec::polynomial(opts.poly_a.value_or(1.0),
                                           opts.poly_b.value_or(2));

  if (opts.lambda) params.lambda = *opts.lambda;
  if (opts.interp) params.interp = *opts.interp;
  if (opts.padding) params.padding = *opts.padding;
  if (opts.cell_size) params.feature.cell_size = *opts.cell_size;
  params.validate();
  return params;
}

BenchOptions resolve_bench_options(const RunOptions& opts) {
  BenchOptions b;
  b.threshold = opts.threshold;
  b.max_threshold = std::max(50, opts.threshold);
  b.jobs = opts.jobs.value_or(std::max(1u, std::thread::hardware_concurrency()));
  require(b.threshold >= 0, ErrorKind::invalid_argument,
          "threshold must be non-negative");
  return b;
}

void describe(std::ostream& out, const TrackerParams& params) {
  out << "feature=" << to_string(params.feature.kind);
  if (params.feature.kind == FeatureKind::hog)
    out << " cell=" << params.feature.cell_size;
  out << " kernel=" << params.kernel.name();
  if (const auto* g = std::get_if<GaussianKernel>(&params.kernel.kind()))
    out << " sigma=" << g->sigma
        << (g->norm == GaussianNorm::elements ? " norm=elements" : "");
  if (const auto* p = std::get_if<PolynomialKernel>(&params.kernel.kind()))
    out << " a=" << p->a << " b=" << p->b;
  out << " lambda=" << params.lambda << " interp=" << params.interp
      << " padding=" << params.padding << '\n';
}

int cmd_track(const std::filesystem::path& sequence, const RunOptions& opts,
              const std::optional<std::filesystem::path>& out_file,
              std::ostream& out, std::ostream& err) {
  try {
    const TrackerParams params = resolve_params(opts);
    const BenchOptions bench = resolve_bench_options(opts);
    const Sequence seq = load_sequence(sequence);
    describe(err, params);
    const SequenceResult result = track_sequence(seq, params, bench);

    if (out_file)
      write_boxes(*out_file, result.predictions);
    else
      for (const BoundingBox& b : result.predictions)
        out << b.left() << ',' << b.top() << ',' << b.width << ',' << b.height
            << '\n';

    err << seq.name << ": " << result.predictions.size() << " frames, precision@"
        << bench.threshold << " = " << result.precision << ", " << result.fps
        << " fps\n";
    return 0;
  } catch (const std::exception& e) {
    err << "kcf track: " << e.what() << '\n';
    return 1;
  }
}

int cmd_bench(const std::filesystem::path& root, const RunOptions& opts,
              const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err) {
  try {
    const TrackerParams params = resolve_params(opts);
    const BenchOptions bench = resolve_bench_options(opts);
    const auto dirs = find_sequences(root);
    require(!dirs.empty(), ErrorKind::io,
            "no sequences (directories with groundtruth_rect.txt) under " +
                root.string());

    describe(out, params);
    const Report report = run_benchmark(dirs, params, bench);
    write_report(report, out_dir);

    std::size_t failed = 0;
    for (const SequenceResult& r : report.sequences) {
      if (r.failure) {
        ++failed;
        err << r.name << ": FAILED: " << *r.failure << '\n';
      } else {
        out << r.name << ": precision@" << report.threshold << " = "
            << r.precision << ", " << r.fps << " fps\n";
      }
    }
    out << "mean precision@" << report.threshold << " = " << report.mean_precision
        << ", mean fps = " << report.mean_fps << " over "
        << report.sequences.size() - failed << " sequences\n";
    out << "report written to " << (out_dir / "report.json").string() << '\n';
    return failed == report.sequences.size() ? 1 : 0;
  } catch (const std::exception& e) {
    err << "kcf bench: " << e.what() << '\n';
    return 1;
  }
}

int cmd_selftest(std::size_t budget, std::uint64_t seed, std::ostream& out) {
  out << "selftest: budget=" << budget << " seed=" << seed << '\n';
  bool ok = true;
  for (const selftest::CheckResult& r : selftest::run_all(budget, seed)) {
    out << selftest::format(r) << '\n';
    ok = ok && r.passed;
  }
  out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? 0 : 1;
}

}  // namespace kcf::cli

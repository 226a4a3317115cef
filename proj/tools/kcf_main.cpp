#include <CLI11.hpp>

#include <iostream>

#include "run_config.hpp"

int main(int argc, char** argv) {
  kcf::cli::RunOptions opts;

  CLI::App app{"Kernelized / dual correlation filter tracker"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file (flags take precedence)");

  app.add_option("--preset", opts.preset, "kcf-raw | kcf-hog | dcf-raw | dcf-hog");
  app.add_option("--feature", opts.feature, "raw | hog");
  app.add_option("--kernel", opts.kernel, "gaussian | linear | polynomial");
  app.add_option("--sigma", opts.sigma, "Gaussian kernel bandwidth");
  app.add_option("--lambda", opts.lambda, "Ridge regularization");
  app.add_option("--interp", opts.interp, "Model adaptation rate in [0,1]");
  app.add_option("--padding", opts.padding, "Window size relative to the target");
  app.add_option("--cell-size", opts.cell_size, "HOG cell size in pixels");
  app.add_option("--poly-a", opts.poly_a, "Polynomial kernel offset a");
  app.add_option("--poly-b", opts.poly_b, "Polynomial kernel degree b");
  app.add_option("--gaussian-norm", opts.gaussian_norm,
                 "Gaussian distance divisor: spatial (m*n) | elements (m*n*c)");
  app.add_option("--threshold", opts.threshold, "Precision threshold in pixels")
      ->capture_default_str();
  app.add_option("--jobs", opts.jobs, "Parallel sequences (default: all cores)");

  std::string sequence;
  std::optional<std::string> track_out;
  auto* track = app.add_subcommand("track", "Track one OTB-style sequence");
  track->fallthrough();
  track->add_option("sequence", sequence, "Sequence directory")->required();
  track->add_option("--out", track_out, "Write x,y,w,h boxes here (default: stdout)");

  std::string root;
  std::string bench_out = "kcf_report";
  auto* bench = app.add_subcommand("bench", "Benchmark every sequence under a root");
  bench->fallthrough();
  bench->add_option("root", root, "Dataset root")->required();
  bench->add_option("--out", bench_out, "Report directory")->capture_default_str();

  std::size_t budget = 20;
  std::uint64_t seed = 1;
  auto* selftest = app.add_subcommand("selftest", "Run the oracle-equivalence checks");
  selftest->add_option("--budget", budget, "Random cases per suite")
      ->capture_default_str();
  selftest->add_option("--seed", seed, "RNG seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*track) {
    std::optional<std::filesystem::path> out;
    if (track_out) out = *track_out;
    return kcf::cli::cmd_track(sequence, opts, out, std::cout, std::cerr);
  }
  if (*bench) return kcf::cli::cmd_bench(root, opts, bench_out, std::cout, std::cerr);
  return kcf::cli::cmd_selftest(budget, seed, std::cout);
}

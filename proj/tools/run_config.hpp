#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "kcf/bench.hpp"
#include "kcf/pipeline.hpp"

namespace kcf::cli {

/// Raw command-line / config-file values. Unset fields fall back to the
/// preset, then to the standard defaults for the chosen feature type.
struct RunOptions {
  std::optional<std::string> preset;
  std::optional<std::string> feature;  // raw | hog
  std::optional<std::string> kernel;   // gaussian | linear | polynomial
  std::optional<double> sigma;
  std::optional<double> lambda;
  std::optional<double> interp;
  std::optional<double> padding;
  std::optional<int> cell_size;
  std::optional<double> poly_a;
  std::optional<int> poly_b;
  std::optional<std::string> gaussian_norm;  // spatial | elements
  int threshold = 20;
  std::optional<unsigned> jobs;
};

/// Throws kcf::Error(invalid_argument) on unknown names or invalid values.
TrackerParams resolve_params(const RunOptions& opts);

BenchOptions resolve_bench_options(const RunOptions& opts);

void describe(std::ostream& out, const TrackerParams& params);

int cmd_track(const std::filesystem::path& sequence, const RunOptions& opts,
              const std::optional<std::filesystem::path>& out_file,
              std::ostream& out, std::ostream& err);

int cmd_bench(const std::filesystem::path& root, const RunOptions& opts,
              const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err);

int cmd_selftest(std::size_t budget, std::uint64_t seed, std::ostream& out);

}  // namespace kcf::cli

#include "kcf/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "kcf/bench.hpp"
#include "kcf/circulant.hpp"
#include "kcf/filter.hpp"
#include "kcf/fourier.hpp"
#include "kcf/kernels.hpp"
#include "kcf/oracle.hpp"
#include "kcf/pipeline.hpp"
#include "kcf/synthetic.hpp"

namespace kcf::selftest {
namespace {

using Rng = std::mt19937_64;

struct Shape {
  std::size_t m, n, c;
};

constexpr std::array<Shape, 5> kMapShapes = {
    {{4, 4, 1}, {6, 6, 3}, {8, 5, 2}, {8, 8, 3}, {3, 7, 1}}};

RealGrid2D random_grid(Rng& rng, std::size_t m, std::size_t n,
                       double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  RealGrid2D g(m, n);
  for (double& v : g.values()) v = d(rng);
  return g;
}

FeatureMap random_map(Rng& rng, const Shape& s) {
  std::uniform_real_distribution<double> d(-0.5, 0.5);
  FeatureMap f(s.m, s.n, s.c);
  for (double& v : f.values()) v = d(rng);
  return f;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double abs_error(const RealGrid2D& a, const RealGrid2D& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

double rel_error(const RealGrid2D& got, const RealGrid2D& want) {
  return abs_error(got, want) / std::max(max_abs(want.values()), 1e-300);
}

// Per-case bookkeeping shared by every check.
class Tally {
 public:
  Tally(std::string name, double tolerance)
      : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
    result_.passed = true;
  }

  void observe(double error, const std::string& what) {
    ++result_.cases;
    if (!(error <= result_.tolerance) && result_.detail.empty())
      result_.detail = what;
    if (!(error <= result_.tolerance)) result_.passed = false;
    if (std::isnan(error) || error > result_.error) result_.error = error;
  }

  void flag(bool ok, const std::string& what) {
    ++result_.cases;
    if (!ok) {
      result_.passed = false;
      if (result_.detail.empty()) result_.detail = what;
    }
  }

  CheckResult finish() {
    result_.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    return result_;
  }

 private:
  CheckResult result_;
  std::chrono::steady_clock::time_point start_;
};

std::string dims(std::size_t m, std::size_t n) { return shape_string(m, n); }

}  // namespace

CheckResult linear_filter(const CheckOptions& opt) {
  Tally tally("linear-filter", opt.tolerance);
  Rng rng(opt.seed);
  constexpr std::array<std::size_t, 4> kLengths = {4, 8, 16, 32};
  constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kGrids = {
      {{2, 2}, {4, 4}, {8, 8}, {2, 8}, {4, 6}, {3, 5}}};
  constexpr std::array<double, 2> kLambdas = {1e-2, 1e-1};

  auto run = [&](std::size_t m, std::size_t n, double lambda) {
    const RealGrid2D x = random_grid(rng, m, n);
    const RealGrid2D y = random_grid(rng, m, n);
    const RealGrid2D fast =
        real_part(idft2(linear_ridge_fft(dft2(x), dft2(y), lambda)));
    const DenseMatrix X = m == 1 ? circulant_matrix(x) : enumerate_all_shifts(x);
    const RealGrid2D dense =
        from_vector(linear_ridge_dense(X, to_vector(y), lambda), m, n);
    tally.observe(rel_error(fast, dense), "size " + dims(m, n));
  };

  for (std::size_t n : kLengths) run(1, n, kLambdas[0]);
  for (auto [m, n] : kGrids) run(m, n, kLambdas[0]);
  for (std::size_t i = 0; i < opt.cases; ++i) {
    const double lambda = kLambdas[i % kLambdas.size()];
    if (i % 2 == 0)
      run(1, kLengths[(i / 2) % kLengths.size()], lambda);
    else
      run(kGrids[(i / 2) % kGrids.size()].first,
          kGrids[(i / 2) % kGrids.size()].second, lambda);
  }
  return tally.finish();
}

namespace {

const std::array<KernelSpec, 3>& oracle_kernels() {
  static const std::array<KernelSpec, 3> kernels = {
      KernelSpec::gaussian(0.5), KernelSpec::linear(),
      KernelSpec::polynomial(1.0, 2)};
  return kernels;
}

template <typename Body>
void over_kernel_cases(const CheckOptions& opt, Rng& rng, const Body& body) {
  constexpr std::array<double, 2> kLambdas = {1e-4, 1e-2};
  const std::size_t fixed = oracle_kernels().size() * kLambdas.size();
  for (std::size_t i = 0; i < fixed + opt.cases; ++i) {
    const KernelSpec& k = oracle_kernels()[i % oracle_kernels().size()];
    const double lambda = kLambdas[(i / oracle_kernels().size()) % kLambdas.size()];
    const Shape& s = kMapShapes[i % kMapShapes.size()];
    body(k, lambda, s, rng);
  }
}

std::string describe(const KernelSpec& k, const Shape& s, double lambda) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %zux%zux%zu lambda=%g", k.name().c_str(),
                s.m, s.n, s.c, lambda);
  return buf;
}

}  // namespace

CheckResult krr_train(const CheckOptions& opt) {
  Tally tally("krr-train", opt.tolerance);
  Rng rng(opt.seed);
  over_kernel_cases(opt, rng, [&](const KernelSpec& k, double lambda,
                                  const Shape& s, Rng& r) {
    const FeatureMap x = random_map(r, s);
    const TargetGrid y = make_target(s.m, s.n, 1.0);
    const FilterModel model = train(x, y, k, lambda);
    const RealGrid2D alpha = real_part(idft2(model.alphaf()));
    const RealGrid2D dense =
        oracle::krr_alpha(x, y.y, make_kernel_function(k), lambda);
    tally.observe(rel_error(alpha, dense), describe(k, s, lambda));
  });
  return tally.finish();
}

CheckResult krr_detect(const CheckOptions& opt) {
  Tally tally("krr-detect", opt.tolerance);
  Rng rng(opt.seed);
  over_kernel_cases(opt, rng, [&](const KernelSpec& k, double lambda,
                                  const Shape& s, Rng& r) {
    const FeatureMap x = random_map(r, s);
    const FeatureMap z = random_map(r, s);
    const TargetGrid y = make_target(s.m, s.n, 1.0);
    const KernelFunction kappa = make_kernel_function(k);
    const RealGrid2D fast = detect(train(x, y, k, lambda), z);
    const RealGrid2D alpha = oracle::krr_alpha(x, y.y, kappa, lambda);
    const RealGrid2D dense = oracle::krr_detect(x, alpha, z, kappa);
    tally.observe(rel_error(fast, dense), describe(k, s, lambda));
  });
  return tally.finish();
}

CheckResult kernel_correlation(const CheckOptions& opt) {
  Tally tally("kernel-correlation", opt.tolerance);
  Rng rng(opt.seed);
  const std::size_t fixed = kMapShapes.size() * oracle_kernels().size();
  for (std::size_t i = 0; i < fixed + opt.cases; ++i) {
    const KernelSpec& k = oracle_kernels()[i % oracle_kernels().size()];
    const Shape& s = kMapShapes[(i / oracle_kernels().size()) % kMapShapes.size()];
    const FeatureMap x = random_map(rng, s);
    const FeatureMap x2 = random_map(rng, s);
    const RealGrid2D fast = kcf::kernel_correlation(x, x2, k);
    const RealGrid2D naive =
        kernel_correlation_naive(x, x2, make_kernel_function(k));
    tally.observe(abs_error(fast, naive), describe(k, s, 0.0));
  }
  return tally.finish();
}

CheckResult circulance(const CheckOptions& opt) {
  Tally tally("kernel-circulance", 0.0);
  Rng rng(opt.seed);
  std::uniform_int_distribution<int> value(-8, 8);
  std::uniform_int_distribution<std::size_t> length(2, 16);
  const std::array<std::pair<const char*, KernelFunction>, 3> kernels = {{
      {"gaussian", make_kernel_function(KernelSpec::gaussian(0.5))},
      {"linear", make_kernel_function(KernelSpec::linear())},
      {"intersection", intersection_kernel()},
  }};

  for (std::size_t i = 0; i < 4 + opt.cases; ++i) {
    constexpr std::array<std::size_t, 4> kFixed = {4, 8, 13, 16};
    const std::size_t len = i < kFixed.size() ? kFixed[i] : length(rng);
    FeatureMap x(1, len, 1);
    for (double& v : x.values()) v = value(rng);
    for (const auto& [name, kappa] : kernels) {
      const Eigen::MatrixXd K = oracle::kernel_matrix(x, x, kappa);
      const RealGrid2D k = kernel_correlation_naive(x, x, kappa);
      bool exact = true;
      for (std::size_t r = 0; r < len; ++r)
        for (std::size_t c = 0; c < len; ++c)
          exact &= K(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) ==
                   k(0, (c + len - r) % len);
      tally.flag(exact, std::string(name) + " n=" + std::to_string(len));
    }
  }
  return tally.finish();
}

CheckResult mosse(const CheckOptions& opt) {
  Tally tally("mosse-multi-sample", opt.tolerance);
  Rng rng(opt.seed);
  constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kGrids = {
      {{1, 8}, {1, 16}, {4, 4}, {3, 6}}};
  for (std::size_t i = 0; i < kGrids.size() + opt.cases; ++i) {
    const auto [m, n] = kGrids[i % kGrids.size()];
    const std::size_t count = 1 + i % 4;
    const double lambda = i % 2 ? 1e-1 : 1e-2;
    std::vector<RealGrid2D> samples;
    std::vector<SpectrumGrid> spectra;
    for (std::size_t k = 0; k < count; ++k) {
      samples.push_back(random_grid(rng, m, n));
      spectra.push_back(dft2(samples.back()));
    }
    const RealGrid2D y = random_grid(rng, m, n);
    const SpectrumGrid y_hat = dft2(y);
    const SpectrumGrid w_hat = mosse_multi_sample(spectra, y_hat, lambda);
    const RealGrid2D dense = oracle::stacked_ridge(samples, y, lambda);
    tally.observe(rel_error(real_part(idft2(w_hat)), dense),
                  std::to_string(count) + " samples " + dims(m, n));
    if (count == 1)
      tally.flag(w_hat == linear_ridge_fft(spectra.front(), y_hat, lambda),
                 "single sample is not bit-equal to linear_ridge_fft");
  }
  return tally.finish();
}

CheckResult dcf_mosse(const CheckOptions& opt) {
  Tally tally("dcf-equals-mosse", opt.tolerance);
  Rng rng(opt.seed);
  constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kGrids = {
      {{8, 8}, {16, 12}, {5, 7}, {32, 32}}};
  for (std::size_t i = 0; i < kGrids.size() + opt.cases; ++i) {
    const auto [m, n] = kGrids[i % kGrids.size()];
    const double lambda = i % 2 ? 1e-4 : 1e-2;
    const RealGrid2D x = random_grid(rng, m, n);
    const RealGrid2D z = random_grid(rng, m, n);
    const TargetGrid y = make_target(m, n, std::sqrt(double(m * n)) / 10.0);

    const RealGrid2D dual = detect(
        train(FeatureMap(x), y, KernelSpec::linear(), lambda), FeatureMap(z));
    const RealGrid2D primal =
        linear_filter_response(linear_ridge_fft(dft2(x), y.y_hat, lambda), z);
    tally.observe(rel_error(dual, primal), dims(m, n));
  }
  return tally.finish();
}

CheckResult synthetic_tracking(const CheckOptions& opt) {
  Tally tally("synthetic-tracking", opt.tolerance);
  synthetic::SceneSpec spec;
  spec.seed = opt.seed;
  const synthetic::Scene scene = synthetic::translating_square(spec);
  const TrackerParams params = make_params(Preset::kcf_raw);

  TrackerState state = init(scene.frames.front(), scene.truth.front(), params);
  std::vector<Point> pred{{state.bbox.center_x, state.bbox.center_y}};
  for (std::size_t t = 1; t < scene.frames.size(); ++t) {
    TrackResult r = track_frame(state, scene.frames[t]);
    state = std::move(r.state);
    pred.push_back({r.bbox.center_x, r.bbox.center_y});
  }
  std::vector<Point> truth;
  for (std::size_t t = 0; t < scene.truth.size(); ++t) {
    truth.push_back({scene.truth[t].center_x, scene.truth[t].center_y});
    tally.observe(std::hypot(pred[t].x - truth[t].x, pred[t].y - truth[t].y),
                  "frame " + std::to_string(t));
  }
  const PrecisionCurve curve = precision_curve(pred, truth, 50);
  tally.flag(precision_at(curve, 20) == 1.0, "precision@20 below 1");
  return tally.finish();
}

CheckResult self_detection(const CheckOptions& opt) {
  Tally tally("self-detection", opt.tolerance);
  synthetic::SceneSpec spec;
  spec.seed = opt.seed;
  spec.frames = 1;
  const synthetic::Scene scene = synthetic::translating_square(spec);

  for (double lambda : {1e-4, 1e-9}) {
    TrackerParams params = make_params(Preset::kcf_raw);
    params.lambda = lambda;
    const TrackerState state =
        init(scene.frames.front(), scene.truth.front(), params);
    const RealGrid2D response = detect(
        state.model, sample_features(state, scene.frames.front(),
                                     state.bbox.center_x, state.bbox.center_y));
    const auto [r, c] = argmax(response);
    tally.flag(r == 0 && c == 0, "peak not at zero displacement");
    if (lambda == 1e-9)
      tally.observe(abs_error(response, state.target.y), "lambda=1e-9");
  }
  return tally.finish();
}

std::vector<CheckResult> run_all(std::size_t budget, std::uint64_t seed) {
  auto opts = [&](double tol) { return CheckOptions{budget, seed, tol}; };
  return {
      linear_filter(opts(1e-8)),
      krr_train(opts(1e-6)),
      krr_detect(opts(1e-6)),
      kernel_correlation(opts(1e-8)),
      circulance(opts(0.0)),
      mosse(opts(1e-8)),
      dcf_mosse(opts(1e-6)),
      synthetic_tracking(opts(2.0)),
      self_detection(opts(1e-4)),
  };
}

std::string format(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %-22s cases=%-4zu err=%.3e tol=%.1e %.3fs",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.cases, r.error,
                r.tolerance, r.seconds);
  std::string line = buf;
  if (!r.passed && !r.detail.empty()) line += "  [" + r.detail + "]";
  return line;
}

}  // namespace kcf::selftest

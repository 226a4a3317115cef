#include "kcf/filter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kcf/fourier.hpp"

namespace kcf {
namespace {

constexpr double kSingularFloor = 1e-12;

double hann(std::size_t i, std::size_t m) {
  return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                               static_cast<double>(m - 1)));
}

}  // namespace

TargetGrid make_target(std::size_t m, std::size_t n, double s) {
  require(m >= 1 && n >= 1, ErrorKind::invalid_argument,
          "make_target: dimensions must be positive");
  require(std::isfinite(s) && s > 0.0, ErrorKind::invalid_argument,
          "make_target: bandwidth must be positive");
  RealGrid2D y(m, n);
  const double inv = 1.0 / (2.0 * s * s);
  for (std::size_t i = 0; i < m; ++i) {
    const auto di = static_cast<double>(std::min(i, m - i));
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = static_cast<double>(std::min(j, n - j));
      y(i, j) = std::exp(-(di * di + dj * dj) * inv);
    }
  }
  SpectrumGrid y_hat = dft2(y);
  return TargetGrid{std::move(y), s, std::move(y_hat)};
}

CosineWindow make_window(std::size_t m, std::size_t n) {
  require(m >= 2 && n >= 2, ErrorKind::invalid_argument,
          "make_window: both dimensions must be at least 2, got " +
              shape_string(m, n));
  RealGrid2D w(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double hi = hann(i, m);
    for (std::size_t j = 0; j < n; ++j) w(i, j) = hi * hann(j, n);
  }
  return CosineWindow{std::move(w)};
}

FilterModel::FilterModel(SpectrumGrid alphaf, FeatureMap model_x,
                         KernelSpec kernel, double lambda)
    : alphaf_(std::move(alphaf)), model_x_(std::move(model_x)),
      kernel_(std::move(kernel)), lambda_(lambda) {
  require(alphaf_.rows() == model_x_.rows() && alphaf_.cols() == model_x_.cols(),
          ErrorKind::dimension_mismatch,
          "FilterModel: coefficient grid does not match the template");
  require(std::isfinite(lambda_) && lambda_ >= 0.0, ErrorKind::invalid_argument,
          "FilterModel: lambda must be non-negative");
}

FilterModel train(const FeatureMap& x, const TargetGrid& y,
                  const KernelSpec& k, double lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0, ErrorKind::invalid_argument,
          "train: lambda must be non-negative");
  require(x.rows() == y.y.rows() && x.cols() == y.y.cols(),
          ErrorKind::dimension_mismatch,
          "train: features " + shape_string(x) + " vs target " +
              shape_string(y.y.rows(), y.y.cols()));
  const SpectrumGrid kf = dft2(kernel_correlation(x, x, k));
  SpectrumGrid alphaf(kf.rows(), kf.cols());
  for (std::size_t i = 0; i < kf.size(); ++i) {
    const Complex denominator = kf[i] + lambda;
    if (!(std::abs(denominator) >= kSingularFloor))
      fail(ErrorKind::singular,
           "train: kernel spectrum + lambda vanishes at bin " + std::to_string(i));
    alphaf[i] = y.y_hat[i] / denominator;
  }
  return FilterModel(std::move(alphaf), x, k, lambda);
}

SpectrumGrid response_spectrum(const FilterModel& model, const FeatureMap& z) {
  require(z.same_shape(model.model_x()), ErrorKind::dimension_mismatch,
          "detect: patch " + shape_string(z) + " vs model " +
              shape_string(model.model_x()));
  return multiply(dft2(kernel_correlation(model.model_x(), z, model.kernel())),
                  model.alphaf());
}

RealGrid2D detect(const FilterModel& model, const FeatureMap& z) {
  return real_part(idft2(response_spectrum(model, z)));
}

FilterModel interpolate_model(const FilterModel& old_model,
                              const FilterModel& new_model, double eta) {
  require(eta >= 0.0 && eta <= 1.0, ErrorKind::invalid_argument,
          "interpolate_model: eta must lie in [0, 1]");
  require(old_model.model_x().same_shape(new_model.model_x()),
          ErrorKind::dimension_mismatch, "interpolate_model: shape mismatch");
  require(old_model.kernel() == new_model.kernel() &&
              old_model.lambda() == new_model.lambda(),
          ErrorKind::invalid_argument,
          "interpolate_model: models use different kernels or lambda");

  SpectrumGrid alphaf = linear_combination(1.0 - eta, old_model.alphaf(), eta,
                                           new_model.alphaf());
  FeatureMap x = old_model.model_x();
  auto xo = x.values();
  auto xn = new_model.model_x().values();
  for (std::size_t i = 0; i < xo.size(); ++i)
    xo[i] = (1.0 - eta) * xo[i] + eta * xn[i];
  return FilterModel(std::move(alphaf), std::move(x), old_model.kernel(),
                     old_model.lambda());
}

}  // namespace kcf

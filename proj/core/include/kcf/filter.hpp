#pragma once

#include "kcf/grid.hpp"
#include "kcf/kernels.hpp"

namespace kcf {

/// Gaussian regression target with its peak at the top-left element,
/// wrapped around to the other corners.
struct TargetGrid {
  RealGrid2D y;
  double bandwidth = 0.0;  // s
  SpectrumGrid y_hat;      // dft2(y), cached for training
};

/// Separable Hann window, zero on the outer border.
struct CosineWindow {
  RealGrid2D w;
};

/// y(i,j) = exp(-(di^2 + dj^2) / (2 s^2)) with di = min(i, m-i),
/// dj = min(j, n-j).
TargetGrid make_target(std::size_t m, std::size_t n, double s);

/// w(i,j) = hann(i,m) hann(j,n), hann(i,m) = 0.5 (1 - cos(2 pi i / (m-1))).
/// Requires m, n >= 2.
CosineWindow make_window(std::size_t m, std::size_t n);

/// Learned kernel ridge regression model over all cyclic shifts of one base
/// sample. Immutable once built.
class FilterModel {
 public:
  FilterModel(SpectrumGrid alphaf, FeatureMap model_x, KernelSpec kernel,
              double lambda);

  const SpectrumGrid& alphaf() const noexcept { return alphaf_; }
  const FeatureMap& model_x() const noexcept { return model_x_; }
  const KernelSpec& kernel() const noexcept { return kernel_; }
  double lambda() const noexcept { return lambda_; }

 private:
  SpectrumGrid alphaf_;
  FeatureMap model_x_;
  KernelSpec kernel_;
  double lambda_;
};

/// alpha_hat = y_hat / (dft2(k^{xx}) + lambda). `x` must already be windowed.
/// Throws ErrorKind::singular if |k_hat + lambda| < 1e-12 anywhere.
FilterModel train(const FeatureMap& x, const TargetGrid& y,
                  const KernelSpec& k, double lambda);

/// Response spectrum dft2(k^{xz}) ⊙ alpha_hat with
/// k^{xz} = kernel_correlation(model_x, z).
SpectrumGrid response_spectrum(const FilterModel& model, const FeatureMap& z);

/// real(idft2(response_spectrum(model, z))). Entry (du, dv) scores the
/// hypothesis that the target moved by (du, dv) cyclically.
RealGrid2D detect(const FilterModel& model, const FeatureMap& z);

/// (1 - eta) * old + eta * new, applied to alpha_hat and model_x.
FilterModel interpolate_model(const FilterModel& old_model,
                              const FilterModel& new_model, double eta);

}  // namespace kcf

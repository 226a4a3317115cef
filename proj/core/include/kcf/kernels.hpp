#pragma once

#include <functional>
#include <string>
#include <variant>

#include "kcf/grid.hpp"

namespace kcf {

/// Element count the Gaussian squared distance is divided by before exp.
enum class GaussianNorm {
  spatial,   // m*n; the default, which the preset sigmas assume
  elements,  // m*n*c
};

struct GaussianKernel {
  double sigma = 0.5;
  GaussianNorm norm = GaussianNorm::spatial;
};

/// (x^T x' + a)^b
struct PolynomialKernel {
  double a = 1.0;
  int b = 2;
};

struct LinearKernel {};

/// Kernel choice and hyperparameters. Construct through the factories,
/// which validate sigma > 0 and b >= 1.
class KernelSpec {
 public:
  using Kind = std::variant<GaussianKernel, PolynomialKernel, LinearKernel>;

  KernelSpec() : kind_(LinearKernel{}) {}

  static KernelSpec gaussian(double sigma,
                             GaussianNorm norm = GaussianNorm::spatial);
  static KernelSpec polynomial(double a, int b);
  static KernelSpec linear() { return KernelSpec(LinearKernel{}); }

  const Kind& kind() const noexcept { return kind_; }
  bool is_gaussian() const noexcept {
    return std::holds_alternative<GaussianKernel>(kind_);
  }
  bool is_linear() const noexcept {
    return std::holds_alternative<LinearKernel>(kind_);
  }
  std::string name() const;

  friend bool operator==(const KernelSpec& a, const KernelSpec& b);

 private:
  explicit KernelSpec(Kind k) : kind_(k) {}
  Kind kind_;
};

/// Direct kernel evaluation kappa(a, b) on two equally shaped maps.
using KernelFunction =
    std::function<double(const FeatureMap&, const FeatureMap&)>;

/// kappa evaluated element by element, with the same normalization the fast
/// path uses. Used by the sliding-window route and the dense oracles.
KernelFunction make_kernel_function(const KernelSpec& k);

/// sum_i min(a_i, b_i). Permutation-invariant but has no fast path.
KernelFunction intersection_kernel();

double squared_norm(const FeatureMap& x);

/// Kernel correlation: output(du,dv) = kappa(x2, cyclic_shift(x, (du,dv))),
/// computed in O(mn log(mn)) per channel through the DFT. The
/// cross-correlation term is real(idft2(sum_c conj(dft2(x_c)) ⊙ dft2(x2_c))).
RealGrid2D kernel_correlation(const FeatureMap& x, const FeatureMap& x2,
                              const KernelSpec& k);

/// Same quantity by direct evaluation of `kappa` at every shift,
/// O((mn)^2 c). Works for any permutation-invariant kernel. Limited to
/// m*n <= 4096.
RealGrid2D kernel_correlation_naive(const FeatureMap& x, const FeatureMap& x2,
                                    const KernelFunction& kappa);

}  // namespace kcf

#include "kcf/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "kcf/circulant.hpp"
#include "kcf/fourier.hpp"

namespace kcf {
namespace {

double gaussian_count(const FeatureMap& x, GaussianNorm norm) {
  const auto plane = static_cast<double>(x.plane_size());
  return norm == GaussianNorm::spatial
             ? plane
             : plane * static_cast<double>(x.channels());
}

double dot(const FeatureMap& a, const FeatureMap& b) {
  double s = 0.0;
  auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
  return s;
}

void require_same_shape(const FeatureMap& a, const FeatureMap& b,
                        const char* what) {
  require(a.same_shape(b), ErrorKind::dimension_mismatch,
          std::string(what) + ": " + shape_string(a) + " vs " + shape_string(b));
}

// c(du,dv) = <x2, cyclic_shift(x, (du,dv))>, summed over channels.
RealGrid2D cross_correlation(const FeatureMap& x, const FeatureMap& x2) {
  const std::size_t m = x.rows(), n = x.cols();
  SpectrumGrid acc(m, n);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    const SpectrumGrid xf = dft2(x.channel(c), m, n);
    const SpectrumGrid x2f = dft2(x2.channel(c), m, n);
    for (std::size_t i = 0; i < acc.size(); ++i)
      acc[i] += std::conj(xf[i]) * x2f[i];
  }
  return real_part(idft2(acc));
}

}  // namespace

KernelSpec KernelSpec::gaussian(double sigma, GaussianNorm norm) {
  require(std::isfinite(sigma) && sigma > 0.0, ErrorKind::invalid_argument,
          "gaussian kernel: sigma must be positive");
  return KernelSpec(GaussianKernel{sigma, norm});
}

KernelSpec KernelSpec::polynomial(double a, int b) {
  require(std::isfinite(a), ErrorKind::invalid_argument,
          "polynomial kernel: a must be finite");
  require(b >= 1, ErrorKind::invalid_argument,
          "polynomial kernel: exponent b must be >= 1");
  return KernelSpec(PolynomialKernel{a, b});
}

std::string KernelSpec::name() const {
  if (std::holds_alternative<GaussianKernel>(kind_)) return "gaussian";
  if (std::holds_alternative<PolynomialKernel>(kind_)) return "polynomial";
  return "linear";
}

bool operator==(const KernelSpec& a, const KernelSpec& b) {
  if (a.kind_.index() != b.kind_.index()) return false;
  if (auto* g = std::get_if<GaussianKernel>(&a.kind_)) {
    auto& h = std::get<GaussianKernel>(b.kind_);
    return g->sigma == h.sigma && g->norm == h.norm;
  }
  if (auto* p = std::get_if<PolynomialKernel>(&a.kind_)) {
    auto& q = std::get<PolynomialKernel>(b.kind_);
    return p->a == q.a && p->b == q.b;
  }
  return true;
}

KernelFunction make_kernel_function(const KernelSpec& k) {
  return std::visit(
      [](const auto& spec) -> KernelFunction {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GaussianKernel>) {
          return [spec](const FeatureMap& a, const FeatureMap& b) {
            double d = 0.0;
            auto av = a.values(), bv = b.values();
            for (std::size_t i = 0; i < av.size(); ++i) {
              const double e = av[i] - bv[i];
              d += e * e;
            }
            return std::exp(-d / (spec.sigma * spec.sigma *
                                  gaussian_count(a, spec.norm)));
          };
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          return [spec](const FeatureMap& a, const FeatureMap& b) {
            return std::pow(dot(a, b) + spec.a, spec.b);
          };
        } else {
          return [](const FeatureMap& a, const FeatureMap& b) {
            return dot(a, b);
          };
        }
      },
      k.kind());
}

KernelFunction intersection_kernel() {
  return [](const FeatureMap& a, const FeatureMap& b) {
    double s = 0.0;
    auto av = a.values(), bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) s += std::min(av[i], bv[i]);
    return s;
  };
}

double squared_norm(const FeatureMap& x) {
  double s = 0.0;
  for (double v : x.values()) s += v * v;
  return s;
}

RealGrid2D kernel_correlation(const FeatureMap& x, const FeatureMap& x2,
                              const KernelSpec& k) {
  require_same_shape(x, x2, "kernel_correlation");
  RealGrid2D c = cross_correlation(x, x2);

  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, GaussianKernel>) {
          const double norms = squared_norm(x) + squared_norm(x2);
          const double scale =
              1.0 / (spec.sigma * spec.sigma * gaussian_count(x, spec.norm));
          for (double& v : c.values())
            v = std::exp(-std::max(norms - 2.0 * v, 0.0) * scale);
        } else if constexpr (std::is_same_v<T, PolynomialKernel>) {
          for (double& v : c.values()) v = std::pow(v + spec.a, spec.b);
        }
      },
      k.kind());
  return c;
}

RealGrid2D kernel_correlation_naive(const FeatureMap& x, const FeatureMap& x2,
                                    const KernelFunction& kappa) {
  require_same_shape(x, x2, "kernel_correlation_naive");
  require(x.plane_size() <= kOracleMaxElements, ErrorKind::size_guard,
          "kernel_correlation_naive: " + shape_string(x) +
              " exceeds the sliding-window limit of " +
              std::to_string(kOracleMaxElements) + " cells");
  RealGrid2D out(x.rows(), x.cols());
  for (std::size_t du = 0; du < x.rows(); ++du)
    for (std::size_t dv = 0; dv < x.cols(); ++dv)
      out(du, dv) = kappa(
          x2, cyclic_shift(x, {static_cast<long>(du), static_cast<long>(dv)}));
  return out;
}

}  // namespace kcf

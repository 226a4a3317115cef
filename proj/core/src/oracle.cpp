#include "kcf/oracle.hpp"

#include <string>
#include <vector>

namespace kcf::oracle {
namespace {

void guard(std::size_t cells, const char* what) {
  require(cells <= kOracleMaxElements, ErrorKind::size_guard,
          std::string(what) + ": " + std::to_string(cells) +
              " cells exceeds the dense oracle limit");
}

std::vector<FeatureMap> all_shifts(const FeatureMap& x) {
  std::vector<FeatureMap> out;
  out.reserve(x.plane_size());
  for (std::size_t du = 0; du < x.rows(); ++du)
    for (std::size_t dv = 0; dv < x.cols(); ++dv)
      out.push_back(
          cyclic_shift(x, {static_cast<long>(du), static_cast<long>(dv)}));
  return out;
}

}  // namespace

Eigen::MatrixXd kernel_matrix(const FeatureMap& a, const FeatureMap& b,
                              const KernelFunction& kappa) {
  require(a.same_shape(b), ErrorKind::dimension_mismatch,
          "oracle::kernel_matrix: shape mismatch");
  guard(a.plane_size(), "oracle::kernel_matrix");
  const auto sa = all_shifts(a), sb = all_shifts(b);
  const auto n = static_cast<Eigen::Index>(sa.size());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      K(i, j) = kappa(sa[static_cast<std::size_t>(i)],
                      sb[static_cast<std::size_t>(j)]);
  return K;
}

RealGrid2D krr_alpha(const FeatureMap& x, const RealGrid2D& y,
                     const KernelFunction& kappa, double lambda) {
  require(x.rows() == y.rows() && x.cols() == y.cols(),
          ErrorKind::dimension_mismatch, "oracle::krr_alpha: shape mismatch");
  Eigen::MatrixXd K = kernel_matrix(x, x, kappa);
  K.diagonal().array() += lambda;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  require(lu.isInvertible(), ErrorKind::singular,
          "oracle::krr_alpha: K + lambda I is singular");
  return from_vector(lu.solve(to_vector(y)), y.rows(), y.cols());
}

RealGrid2D krr_detect(const FeatureMap& x, const RealGrid2D& alpha,
                      const FeatureMap& z, const KernelFunction& kappa) {
  require(alpha.rows() == x.rows() && alpha.cols() == x.cols(),
          ErrorKind::dimension_mismatch, "oracle::krr_detect: shape mismatch");
  const Eigen::MatrixXd Kz = kernel_matrix(z, x, kappa);
  return from_vector(Kz.transpose() * to_vector(alpha), x.rows(), x.cols());
}

RealGrid2D stacked_ridge(std::span<const RealGrid2D> samples,
                         const RealGrid2D& y, double lambda) {
  require(!samples.empty(), ErrorKind::invalid_argument,
          "oracle::stacked_ridge: no samples");
  const auto cells = static_cast<Eigen::Index>(y.size());
  const auto k = static_cast<Eigen::Index>(samples.size());
  DenseMatrix X(cells * k, cells);
  Eigen::VectorXd target(cells * k);
  const Eigen::VectorXd yv = to_vector(y);
  for (Eigen::Index i = 0; i < k; ++i) {
    const RealGrid2D& s = samples[static_cast<std::size_t>(i)];
    require(s.same_shape(y), ErrorKind::dimension_mismatch,
            "oracle::stacked_ridge: sample shape mismatch");
    X.middleRows(i * cells, cells) = enumerate_all_shifts(s);
    target.segment(i * cells, cells) = yv;
  }
  return from_vector(linear_ridge_dense(X, target, lambda), y.rows(), y.cols());
}

RealGrid2D filter_response(const RealGrid2D& w, const RealGrid2D& z) {
  require(w.same_shape(z), ErrorKind::dimension_mismatch,
          "oracle::filter_response: shape mismatch");
  guard(z.size(), "oracle::filter_response");
  RealGrid2D out(z.rows(), z.cols());
  for (std::size_t du = 0; du < z.rows(); ++du)
    for (std::size_t dv = 0; dv < z.cols(); ++dv) {
      const RealGrid2D shifted = cyclic_shift(
          z, {-static_cast<long>(du), -static_cast<long>(dv)});
      double s = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * shifted[i];
      out(du, dv) = s;
    }
  return out;
}

}  // namespace kcf::oracle

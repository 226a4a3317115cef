#pragma once

// Dense, direct-evaluation counterparts of the Fourier-domain fast paths.
// Cost is O((mn)^2 c) to O((mn)^3); all inputs are limited to
// m*n <= kOracleMaxElements.

#include <Eigen/Dense>
#include <span>

#include "kcf/circulant.hpp"
#include "kcf/grid.hpp"
#include "kcf/kernels.hpp"

namespace kcf::oracle {

/// K_ij = kappa(shift_i(a), shift_j(b)), shifts enumerated row-major as in
/// enumerate_all_shifts.
Eigen::MatrixXd kernel_matrix(const FeatureMap& a, const FeatureMap& b,
                              const KernelFunction& kappa);

/// alpha = (K + lambda I)^{-1} y with K = kernel_matrix(x, x).
RealGrid2D krr_alpha(const FeatureMap& x, const RealGrid2D& y,
                     const KernelFunction& kappa, double lambda);

/// f = (K^z)^T alpha with K^z_ij = kappa(shift_i(z), shift_j(x)).
RealGrid2D krr_detect(const FeatureMap& x, const RealGrid2D& alpha,
                      const FeatureMap& z, const KernelFunction& kappa);

/// Ridge solution over the stacked shift matrices of every sample, all
/// sharing target y.
RealGrid2D stacked_ridge(std::span<const RealGrid2D> samples,
                         const RealGrid2D& y, double lambda);

/// r(t) = w . cyclic_shift(z, -t) evaluated directly.
RealGrid2D filter_response(const RealGrid2D& w, const RealGrid2D& z);

}  // namespace kcf::oracle

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "kcf/grid.hpp"

namespace kcf {

/// Cyclic translation. Any integer is valid; it is reduced modulo the grid
/// dimensions.
struct ShiftAmount {
  long du = 0;  // rows
  long dv = 0;  // columns
};

/// Dense matrices only appear in oracle code, never on the tracking path.
using DenseMatrix = Eigen::MatrixXd;

/// Largest m*n accepted by the dense oracle operations.
inline constexpr std::size_t kOracleMaxElements = 4096;

/// output(i,j) = input((i - du) mod m, (j - dv) mod n).
RealGrid2D cyclic_shift(const RealGrid2D& g, ShiftAmount s);

/// Same shift applied to every channel.
FeatureMap cyclic_shift(const FeatureMap& f, ShiftAmount s);

/// Circulant matrix of a 1 x n signal: row i is cyclic_shift(x, (0, i)).
DenseMatrix circulant_matrix(const RealGrid2D& x);

/// One row per shift (du, dv), at index du*n + dv, holding the shifted grid
/// flattened row-major. For 1 x n input this equals circulant_matrix.
DenseMatrix enumerate_all_shifts(const RealGrid2D& x);

/// Closed-form ridge regression over all cyclic shifts of one base sample:
///
///   w_hat = x_hat ⊙ y_hat / (conj(x_hat) ⊙ x_hat + lambda)
///
/// The numerator carries x_hat (not its conjugate) because the data
/// matrix rows are cyclic_shift(x, s) under the forward DFT of fourier.hpp;
/// this is what the dense solve of linear_ridge_dense reproduces.
/// Throws ErrorKind::singular if a denominator falls below 1e-12.
SpectrumGrid linear_ridge_fft(const SpectrumGrid& x_hat,
                              const SpectrumGrid& y_hat, double lambda);

/// Oracle: w = (X^T X + lambda I)^{-1} X^T y by a direct dense solve.
Eigen::VectorXd linear_ridge_dense(const DenseMatrix& X,
                                   const Eigen::VectorXd& y, double lambda);

/// Ridge regression over the cyclic shifts of several base samples with a
/// shared target (the MOSSE filter):
///
///   w_hat = sum_i x_hat_i ⊙ y_hat / (sum_i conj(x_hat_i) ⊙ x_hat_i + lambda)
SpectrumGrid mosse_multi_sample(std::span<const SpectrumGrid> x_hats,
                                const SpectrumGrid& y_hat, double lambda);

/// Response of a primal linear filter to every displacement of patch z:
/// r(t) = w . cyclic_shift(z, -t) = real(idft2(conj(w_hat) ⊙ dft2(z))).
/// Index t is the hypothesis that the content moved by t.
RealGrid2D linear_filter_response(const SpectrumGrid& w_hat,
                                  const RealGrid2D& z);

/// Flatten a grid row-major into an Eigen vector and back.
Eigen::VectorXd to_vector(const RealGrid2D& g);
RealGrid2D from_vector(const Eigen::VectorXd& v, std::size_t rows,
                       std::size_t cols);

}  // namespace kcf

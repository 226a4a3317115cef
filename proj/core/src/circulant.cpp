#include "kcf/circulant.hpp"

#include <cmath>
#include <string>

#include "kcf/fourier.hpp"

namespace kcf {
namespace {

constexpr double kSingularFloor = 1e-12;

std::size_t wrap(long v, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((v % m) + m) % m);
}

void shift_plane(std::span<const double> in, std::span<double> out,
                 std::size_t m, std::size_t n, ShiftAmount s) {
  const std::size_t du = wrap(s.du, m);
  const std::size_t dv = wrap(s.dv, n);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t src_row = (i + m - du) % m;
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = in[src_row * n + (j + n - dv) % n];
  }
}

void require_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda >= 0.0, ErrorKind::invalid_argument,
          "lambda must be a finite non-negative number");
}

}  // namespace

RealGrid2D cyclic_shift(const RealGrid2D& g, ShiftAmount s) {
  RealGrid2D out(g.rows(), g.cols());
  shift_plane(g.values(), out.values(), g.rows(), g.cols(), s);
  return out;
}

FeatureMap cyclic_shift(const FeatureMap& f, ShiftAmount s) {
  FeatureMap out(f.rows(), f.cols(), f.channels());
  for (std::size_t c = 0; c < f.channels(); ++c)
    shift_plane(f.channel(c), out.channel(c), f.rows(), f.cols(), s);
  return out;
}

DenseMatrix circulant_matrix(const RealGrid2D& x) {
  require(x.rows() == 1, ErrorKind::invalid_argument,
          "circulant_matrix expects a 1 x n signal, got " +
              shape_string(x.rows(), x.cols()) +
              "; use enumerate_all_shifts for 2-D grids");
  return enumerate_all_shifts(x);
}

DenseMatrix enumerate_all_shifts(const RealGrid2D& x) {
  const std::size_t m = x.rows(), n = x.cols(), count = m * n;
  require(count <= kOracleMaxElements, ErrorKind::size_guard,
          "enumerate_all_shifts: " + shape_string(m, n) +
              " exceeds the dense oracle limit of " +
              std::to_string(kOracleMaxElements) + " elements");
  DenseMatrix out(count, count);
  std::vector<double> row(count);
  for (std::size_t du = 0; du < m; ++du) {
    for (std::size_t dv = 0; dv < n; ++dv) {
      shift_plane(x.values(), row, m, n,
                  {static_cast<long>(du), static_cast<long>(dv)});
      const auto r = static_cast<Eigen::Index>(du * n + dv);
      for (std::size_t k = 0; k < count; ++k)
        out(r, static_cast<Eigen::Index>(k)) = row[k];
    }
  }
  return out;
}

SpectrumGrid linear_ridge_fft(const SpectrumGrid& x_hat,
                              const SpectrumGrid& y_hat, double lambda) {
  return mosse_multi_sample(std::span<const SpectrumGrid>(&x_hat, 1), y_hat,
                            lambda);
}

Eigen::VectorXd linear_ridge_dense(const DenseMatrix& X,
                                   const Eigen::VectorXd& y, double lambda) {
  require_lambda(lambda);
  require(X.rows() == y.size(), ErrorKind::dimension_mismatch,
          "linear_ridge_dense: X has " + std::to_string(X.rows()) +
              " rows but y has " + std::to_string(y.size()) + " entries");
  require(static_cast<std::size_t>(X.cols()) <= kOracleMaxElements,
          ErrorKind::size_guard, "linear_ridge_dense: system too large");
  const Eigen::Index n = X.cols();
  DenseMatrix A = X.transpose() * X;
  A.diagonal().array() += lambda;
  Eigen::FullPivLU<DenseMatrix> lu(A);
  // Relative threshold: a rank-deficient Gram matrix with lambda = 0 must
  // be reported, not silently pseudo-inverted.
  lu.setThreshold(1e-12);
  require(lu.rank() == n, ErrorKind::singular,
          "linear_ridge_dense: singular system (rank " +
              std::to_string(lu.rank()) + " < " + std::to_string(n) + ")");
  return lu.solve(X.transpose() * y);
}

SpectrumGrid mosse_multi_sample(std::span<const SpectrumGrid> x_hats,
                                const SpectrumGrid& y_hat, double lambda) {
  require(!x_hats.empty(), ErrorKind::invalid_argument,
          "mosse_multi_sample: at least one base sample is required");
  require_lambda(lambda);
  for (const SpectrumGrid& x : x_hats)
    require(x.same_shape(y_hat), ErrorKind::dimension_mismatch,
            "ridge filter: sample spectrum " + shape_string(x.rows(), x.cols()) +
                " does not match target " +
                shape_string(y_hat.rows(), y_hat.cols()));

  SpectrumGrid w(y_hat.rows(), y_hat.cols());
  for (std::size_t i = 0; i < y_hat.size(); ++i) {
    Complex numerator = 0.0;
    double power = 0.0;
    for (const SpectrumGrid& x : x_hats) {
      numerator += x[i];
      power += std::norm(x[i]);
    }
    const double denominator = power + lambda;
    if (!(denominator >= kSingularFloor))
      fail(ErrorKind::singular, "ridge filter: denominator " +
                                    std::to_string(denominator) +
                                    " below 1e-12 at bin " + std::to_string(i));
    w[i] = numerator * y_hat[i] / denominator;
  }
  return w;
}

RealGrid2D linear_filter_response(const SpectrumGrid& w_hat,
                                  const RealGrid2D& z) {
  require(w_hat.rows() == z.rows() && w_hat.cols() == z.cols(),
          ErrorKind::dimension_mismatch,
          "linear_filter_response: filter and patch shapes differ");
  return real_part(idft2(conj_multiply(w_hat, dft2(z))));
}

Eigen::VectorXd to_vector(const RealGrid2D& g) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) v(static_cast<Eigen::Index>(i)) = g[i];
  return v;
}

RealGrid2D from_vector(const Eigen::VectorXd& v, std::size_t rows,
                       std::size_t cols) {
  require(static_cast<std::size_t>(v.size()) == rows * cols,
          ErrorKind::dimension_mismatch, "from_vector: size mismatch");
  RealGrid2D g(rows, cols);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = v(static_cast<Eigen::Index>(i));
  return g;
}

}  // namespace kcf

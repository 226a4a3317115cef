#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "kcf/circulant.hpp"
#include "kcf/fourier.hpp"
#include "kcf/oracle.hpp"
#include "test_util.hpp"

namespace kcf {
namespace {

using testing::random_grid;

RealGrid2D row(std::vector<double> v) {
  const std::size_t n = v.size();
  return RealGrid2D(1, n, std::move(v));
}

double rel(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return (got - want).cwiseAbs().maxCoeff() /
         std::max(want.cwiseAbs().maxCoeff(), 1e-300);
}

TEST(CyclicShift, RowShiftMovesLastElementToFront) {
  EXPECT_EQ(cyclic_shift(row({1, 2, 3, 4}), {0, 1}), row({4, 1, 2, 3}));
}

TEST(CyclicShift, ZeroAndFullPeriodAreIdentity) {
  std::mt19937_64 rng(1);
  const RealGrid2D g = random_grid(rng, 3, 5);
  EXPECT_EQ(cyclic_shift(g, {0, 0}), g);
  EXPECT_EQ(cyclic_shift(g, {3, 5}), g);
  EXPECT_EQ(cyclic_shift(g, {-6, 10}), g);
}

TEST(CyclicShift, NegativeShiftInvertsPositive) {
  std::mt19937_64 rng(2);
  const RealGrid2D g = random_grid(rng, 4, 7);
  EXPECT_EQ(cyclic_shift(cyclic_shift(g, {3, -2}), {-3, 2}), g);
}

TEST(CyclicShift, AppliesToEveryChannel) {
  std::mt19937_64 rng(3);
  const FeatureMap f = testing::random_map(rng, 3, 4, 3);
  const FeatureMap s = cyclic_shift(f, {1, 2});
  for (std::size_t ch = 0; ch < 3; ++ch)
    EXPECT_EQ(s.channel_grid(ch), cyclic_shift(f.channel_grid(ch), {1, 2}));
}

TEST(CirculantMatrix, ThreeElementPattern) {
  DenseMatrix want(3, 3);
  want << 1, 2, 3, 3, 1, 2, 2, 3, 1;
  EXPECT_EQ(circulant_matrix(row({1, 2, 3})), want);
}

TEST(CirculantMatrix, ImpulseGivesIdentity) {
  EXPECT_EQ(circulant_matrix(row({1, 0, 0, 0})), DenseMatrix::Identity(4, 4));
}

TEST(CirculantMatrix, RejectsTwoDimensionalInput) {
  EXPECT_THROW(circulant_matrix(RealGrid2D(2, 3)), Error);
}

TEST(CirculantMatrix, DiagonalisedByUnitaryDft) {
  std::mt19937_64 rng(4);
  const std::size_t n = 8;
  const RealGrid2D x = random_grid(rng, 1, n);
  const SpectrumGrid xh = dft2(x);
  Eigen::VectorXcd d(n);
  for (std::size_t i = 0; i < n; ++i) d(i) = xh[i];
  const Eigen::MatrixXcd F = testing::unitary_dft_matrix(n);
  const Eigen::MatrixXcd recon = F * d.asDiagonal() * F.adjoint();
  EXPECT_LT((recon - circulant_matrix(x).cast<Complex>()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CirculantMatrix, PowerSpectrumIdentity) {
  std::mt19937_64 rng(5);
  const std::size_t n = 16;
  const RealGrid2D x = random_grid(rng, 1, n);
  const SpectrumGrid xh = dft2(x);
  const Eigen::MatrixXcd F = testing::unitary_dft_matrix(n);
  const Eigen::MatrixXcd C = circulant_matrix(x).cast<Complex>();
  const Eigen::MatrixXcd cov = F.adjoint() * C.adjoint() * C * F;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(cov(i, i).real(), std::norm(xh[i]), 1e-8);
    EXPECT_NEAR(cov(i, i).imag(), 0.0, 1e-8);
  }
  // Off-diagonal entries vanish: the covariance is diagonal in the DFT basis.
  const Eigen::MatrixXcd off = cov - Eigen::MatrixXcd(cov.diagonal().asDiagonal());
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(EnumerateAllShifts, OneRowInputMatchesCirculant) {
  std::mt19937_64 rng(6);
  const RealGrid2D x = random_grid(rng, 1, 9);
  EXPECT_EQ(enumerate_all_shifts(x), circulant_matrix(x));
}

TEST(EnumerateAllShifts, TwoByTwoByHand) {
  const RealGrid2D x(2, 2, std::vector<double>{1, 2, 3, 4});  // a b / c d
  DenseMatrix want(4, 4);
  want << 1, 2, 3, 4,  //
      2, 1, 4, 3,      //
      3, 4, 1, 2,      //
      4, 3, 2, 1;
  EXPECT_EQ(enumerate_all_shifts(x), want);
}

TEST(EnumerateAllShifts, RowsArePermutationsOfInput) {
  std::mt19937_64 rng(7);
  const RealGrid2D x = random_grid(rng, 3, 4);
  const DenseMatrix X = enumerate_all_shifts(x);
  std::vector<double> base(x.values().begin(), x.values().end());
  std::sort(base.begin(), base.end());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    std::vector<double> v(X.row(r).begin(), X.row(r).end());
    std::sort(v.begin(), v.end());
    EXPECT_EQ(v, base);
  }
  EXPECT_EQ(to_vector(x), Eigen::VectorXd(X.row(0).transpose()));
}

TEST(EnumerateAllShifts, SizeGuard) {
  try {
    enumerate_all_shifts(RealGrid2D(65, 64));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_guard);
  }
}

TEST(LinearRidgeFft, ImpulseSampleScalesTarget) {
  std::mt19937_64 rng(8);
  const RealGrid2D y = random_grid(rng, 1, 4);
  const RealGrid2D w = real_part(idft2(linear_ridge_fft(dft2(row({1, 0, 0, 0})), dft2(y), 0.1)));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(w[i], y[i] / 1.1, 1e-14);
}

TEST(LinearRidgeFft, LargeLambdaShrinksToZero) {
  std::mt19937_64 rng(9);
  const SpectrumGrid xh = dft2(random_grid(rng, 4, 4));
  const SpectrumGrid yh = dft2(random_grid(rng, 4, 4));
  double prev = 1e300;
  for (double lambda : {1.0, 1e3, 1e6, 1e9}) {
    double mag = 0.0;
    for (const Complex& v : testing::values_of(linear_ridge_fft(xh, yh, lambda)))
      mag = std::max(mag, std::abs(v));
    EXPECT_LT(mag, prev);
    prev = mag;
  }
  EXPECT_LT(prev, 1e-7);
}

TEST(LinearRidgeFft, MatchesDenseSolveOneDimensional) {
  std::mt19937_64 rng(10);
  for (std::size_t n : {4u, 8u, 16u, 32u})
    for (double lambda : {1e-2, 1e-4, 1.0}) {
      const RealGrid2D x = random_grid(rng, 1, n), y = random_grid(rng, 1, n);
      const Eigen::VectorXd fast =
          to_vector(real_part(idft2(linear_ridge_fft(dft2(x), dft2(y), lambda))));
      const Eigen::VectorXd dense =
          linear_ridge_dense(circulant_matrix(x), to_vector(y), lambda);
      EXPECT_LT(rel(fast, dense), 1e-8) << "n=" << n << " lambda=" << lambda;
    }
}

TEST(LinearRidgeFft, MatchesDenseSolveTwoDimensional) {
  std::mt19937_64 rng(11);
  for (std::size_t m : {2u, 4u, 8u})
    for (std::size_t n : {2u, 4u, 8u}) {
      const RealGrid2D x = random_grid(rng, m, n), y = random_grid(rng, m, n);
      const Eigen::VectorXd fast =
          to_vector(real_part(idft2(linear_ridge_fft(dft2(x), dft2(y), 1e-2))));
      const Eigen::VectorXd dense =
          linear_ridge_dense(enumerate_all_shifts(x), to_vector(y), 1e-2);
      EXPECT_LT(rel(fast, dense), 1e-8) << m << "x" << n;
    }
}

TEST(LinearRidgeFft, SingularWithoutRegulariser) {
  // A constant signal has energy only at DC.
  try {
    linear_ridge_fft(dft2(RealGrid2D(1, 4, 1.0)), dft2(row({1, 0, 0, 0})), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular);
  }
}

TEST(LinearRidgeFft, RejectsMismatchAndNegativeLambda) {
  EXPECT_THROW(linear_ridge_fft(SpectrumGrid(2, 2, 1.0), SpectrumGrid(2, 3, 1.0), 0.1), Error);
  EXPECT_THROW(linear_ridge_fft(SpectrumGrid(2, 2, 1.0), SpectrumGrid(2, 2, 1.0), -1.0), Error);
}

TEST(LinearRidgeDense, IdentityCases) {
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(5, -1.0, 3.0);
  const DenseMatrix I = DenseMatrix::Identity(5, 5);
  EXPECT_LT((linear_ridge_dense(I, y, 0.0) - y).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((linear_ridge_dense(I, y, 1.0) - y / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LinearRidgeDense, RankDeficientWithoutRegulariserIsSingular) {
  DenseMatrix X = DenseMatrix::Ones(3, 3);
  try {
    linear_ridge_dense(X, Eigen::VectorXd::Ones(3), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular);
  }
  EXPECT_NO_THROW(linear_ridge_dense(X, Eigen::VectorXd::Ones(3), 0.5));
}

TEST(MosseMultiSample, SingleSampleIsBitEqualToRidge) {
  std::mt19937_64 rng(12);
  const SpectrumGrid xh = dft2(random_grid(rng, 5, 6));
  const SpectrumGrid yh = dft2(random_grid(rng, 5, 6));
  const std::vector<SpectrumGrid> one{xh};
  EXPECT_EQ(mosse_multi_sample(one, yh, 1e-3), linear_ridge_fft(xh, yh, 1e-3));
}

TEST(MosseMultiSample, RepeatedSampleDividesLambda) {
  std::mt19937_64 rng(13);
  const SpectrumGrid xh = dft2(random_grid(rng, 1, 8));
  const SpectrumGrid yh = dft2(random_grid(rng, 1, 8));
  const std::vector<SpectrumGrid> copies(4, xh);
  const SpectrumGrid a = mosse_multi_sample(copies, yh, 0.2);
  const SpectrumGrid b = linear_ridge_fft(xh, yh, 0.05);
  EXPECT_LT(testing::max_abs_diff(a.values(), b.values()), 1e-12);
}

TEST(MosseMultiSample, MatchesStackedDenseSolve) {
  std::mt19937_64 rng(14);
  std::vector<RealGrid2D> xs;
  std::vector<SpectrumGrid> xhs;
  for (int i = 0; i < 3; ++i) {
    xs.push_back(random_grid(rng, 1, 8));
    xhs.push_back(dft2(xs.back()));
  }
  const RealGrid2D y = random_grid(rng, 1, 8);
  const RealGrid2D fast = real_part(idft2(mosse_multi_sample(xhs, dft2(y), 1e-2)));
  const RealGrid2D dense = oracle::stacked_ridge(xs, y, 1e-2);
  EXPECT_LT(testing::rel_diff(fast, dense), 1e-8);

  // Same for 2-D samples.
  xs.clear();
  xhs.clear();
  for (int i = 0; i < 3; ++i) {
    xs.push_back(random_grid(rng, 4, 5));
    xhs.push_back(dft2(xs.back()));
  }
  const RealGrid2D y2 = random_grid(rng, 4, 5);
  EXPECT_LT(testing::rel_diff(real_part(idft2(mosse_multi_sample(xhs, dft2(y2), 1e-3))),
                              oracle::stacked_ridge(xs, y2, 1e-3)),
            1e-8);
}

TEST(MosseMultiSample, RejectsEmptyAndMixedShapes) {
  const std::vector<SpectrumGrid> none;
  EXPECT_THROW(mosse_multi_sample(none, SpectrumGrid(2, 2, 1.0), 0.1), Error);
  const std::vector<SpectrumGrid> mixed{SpectrumGrid(2, 2, 1.0), SpectrumGrid(2, 3, 1.0)};
  EXPECT_THROW(mosse_multi_sample(mixed, SpectrumGrid(2, 2, 1.0), 0.1), Error);
}

TEST(LinearFilterResponse, MatchesDirectDotProducts) {
  std::mt19937_64 rng(15);
  const RealGrid2D w = random_grid(rng, 4, 6), z = random_grid(rng, 4, 6);
  EXPECT_LT(testing::rel_diff(linear_filter_response(dft2(w), z),
                              oracle::filter_response(w, z)),
            1e-12);
}

TEST(VectorConversion, RoundTrip) {
  std::mt19937_64 rng(16);
  const RealGrid2D g = random_grid(rng, 3, 4);
  EXPECT_EQ(from_vector(to_vector(g), 3, 4), g);
  EXPECT_THROW(from_vector(to_vector(g), 2, 4), Error);
}

}  // namespace
}  // namespace kcf

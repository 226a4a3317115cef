#pragma once

#include <cstddef>
#include <span>

#include "kcf/grid.hpp"

namespace kcf {

// Two-dimensional DFT with the standard (non-unitary) convention:
//
//   dft2(g)(u,v) = sum_{j,k} g(j,k) exp(-2*pi*i*(u*j/m + v*k/n))
//   idft2(s)     = (1/(m*n)) * sum_{u,v} s(u,v) exp(+2*pi*i*(u*j/m + v*k/n))
//
// so idft2(dft2(g)) == g and sum|g|^2 == sum|dft2(g)|^2 / (m*n).
// Any m, n >= 1 is accepted. Non-finite input is rejected.
// All functions are safe to call concurrently.

SpectrumGrid dft2(const RealGrid2D& g);
SpectrumGrid dft2(const SpectrumGrid& g);

/// Transform of a row-major m x n real plane, e.g. one FeatureMap channel.
SpectrumGrid dft2(std::span<const double> plane, std::size_t rows,
                  std::size_t cols);

SpectrumGrid idft2(const SpectrumGrid& s);

RealGrid2D real_part(const SpectrumGrid& s);
RealGrid2D imag_part(const SpectrumGrid& s);

/// Element-wise a ⊙ b.
SpectrumGrid multiply(const SpectrumGrid& a, const SpectrumGrid& b);

/// Element-wise conj(a) ⊙ b.
SpectrumGrid conj_multiply(const SpectrumGrid& a, const SpectrumGrid& b);

/// Element-wise complex conjugate.
SpectrumGrid conjugate(const SpectrumGrid& a);

/// Element-wise a * s + b * t.
SpectrumGrid linear_combination(double a, const SpectrumGrid& s, double b,
                                const SpectrumGrid& t);

}  // namespace kcf

#include "kcf/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace kcf {
namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex),
              "std::complex<double> must be layout-compatible with fftw_complex");

// FFTW planning is not thread-safe but executing an existing plan on new
// arrays is, so plans are created once under a lock and never destroyed.
// Plans are made on fftw_malloc'd buffers; every buffer they later run on
// comes from fftw_malloc too, so the SIMD alignment always matches.
class PlanCache {
 public:
  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(rows, cols, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t n = rows * cols;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(rows),
                                      static_cast<int>(cols), in, out, sign,
                                      FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    require(plan != nullptr, ErrorKind::invalid_argument,
            "FFTW could not plan a " + shape_string(rows, cols) + " transform");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Per-thread input/output buffers, grown on demand and reused.
class Workspace {
 public:
  ~Workspace() { release(); }

  void reserve(std::size_t n) {
    if (n <= capacity_) return;
    release();
    in_ = fftw_alloc_complex(n);
    out_ = fftw_alloc_complex(n);
    require(in_ != nullptr && out_ != nullptr, ErrorKind::invalid_argument,
            "FFTW buffer allocation failed");
    capacity_ = n;
  }

  Complex* in() { return reinterpret_cast<Complex*>(in_); }
  fftw_complex* raw_in() { return in_; }
  fftw_complex* raw_out() { return out_; }
  const Complex* out() const { return reinterpret_cast<const Complex*>(out_); }

 private:
  void release() {
    fftw_free(in_);
    fftw_free(out_);
    in_ = out_ = nullptr;
    capacity_ = 0;
  }

  fftw_complex* in_ = nullptr;
  fftw_complex* out_ = nullptr;
  std::size_t capacity_ = 0;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      fail(ErrorKind::non_finite,
           std::string(what) + ": input contains a non-finite value");
}

void check_finite(std::span<const Complex> v, const char* what) {
  for (const Complex& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      fail(ErrorKind::non_finite,
           std::string(what) + ": input contains a non-finite value");
}

// `fill` writes the rows*cols input values into the workspace.
template <typename Fill>
SpectrumGrid transform(std::size_t rows, std::size_t cols, int sign,
                       double scale, const Fill& fill) {
  const std::size_t n = rows * cols;
  fftw_plan plan = plan_cache().get(rows, cols, sign);
  Workspace& ws = workspace();
  ws.reserve(n);
  fill(ws.in());
  fftw_execute_dft(plan, ws.raw_in(), ws.raw_out());
  std::vector<Complex> out(ws.out(), ws.out() + n);
  if (scale != 1.0)
    for (Complex& v : out) v *= scale;
  return SpectrumGrid(rows, cols, std::move(out));
}

void check_same_shape(const SpectrumGrid& a, const SpectrumGrid& b,
                      const char* what) {
  require(a.same_shape(b), ErrorKind::dimension_mismatch,
          std::string(what) + ": shape " + shape_string(a.rows(), a.cols()) +
              " vs " + shape_string(b.rows(), b.cols()));
}

}  // namespace

SpectrumGrid dft2(std::span<const double> plane, std::size_t rows,
                  std::size_t cols) {
  require(rows >= 1 && cols >= 1, ErrorKind::invalid_argument,
          "dft2: dimensions must be positive");
  require(plane.size() == rows * cols, ErrorKind::dimension_mismatch,
          "dft2: plane size does not match dimensions");
  check_finite(plane, "dft2");
  return transform(rows, cols, FFTW_FORWARD, 1.0, [&](Complex* in) {
    for (std::size_t i = 0; i < plane.size(); ++i) in[i] = plane[i];
  });
}

SpectrumGrid dft2(const RealGrid2D& g) {
  return dft2(g.values(), g.rows(), g.cols());
}

SpectrumGrid dft2(const SpectrumGrid& g) {
  check_finite(g.values(), "dft2");
  return transform(g.rows(), g.cols(), FFTW_FORWARD, 1.0, [&](Complex* in) {
    std::copy(g.values().begin(), g.values().end(), in);
  });
}

SpectrumGrid idft2(const SpectrumGrid& s) {
  check_finite(s.values(), "idft2");
  const double scale = 1.0 / static_cast<double>(s.size());
  return transform(s.rows(), s.cols(), FFTW_BACKWARD, scale, [&](Complex* in) {
    std::copy(s.values().begin(), s.values().end(), in);
  });
}

RealGrid2D real_part(const SpectrumGrid& s) {
  RealGrid2D out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].real();
  return out;
}

RealGrid2D imag_part(const SpectrumGrid& s) {
  RealGrid2D out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].imag();
  return out;
}

SpectrumGrid multiply(const SpectrumGrid& a, const SpectrumGrid& b) {
  check_same_shape(a, b, "multiply");
  SpectrumGrid out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

SpectrumGrid conj_multiply(const SpectrumGrid& a, const SpectrumGrid& b) {
  check_same_shape(a, b, "conj_multiply");
  SpectrumGrid out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]) * b[i];
  return out;
}

SpectrumGrid conjugate(const SpectrumGrid& a) {
  SpectrumGrid out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]);
  return out;
}

SpectrumGrid linear_combination(double a, const SpectrumGrid& s, double b,
                                const SpectrumGrid& t) {
  check_same_shape(s, t, "linear_combination");
  SpectrumGrid out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = a * s[i] + b * t[i];
  return out;
}

}  // namespace kcf

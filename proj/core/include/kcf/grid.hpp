#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kcf/error.hpp"

namespace kcf {

using Complex = std::complex<double>;

/// Dense m x n grid stored row-major. The shape is fixed at construction.
template <typename T>
class Grid2D {
 public:
  Grid2D() = default;

  Grid2D(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    require(rows >= 1 && cols >= 1, ErrorKind::invalid_argument,
            "grid dimensions must be positive");
  }

  Grid2D(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    require(rows >= 1 && cols >= 1, ErrorKind::invalid_argument,
            "grid dimensions must be positive");
    if (data_.size() != rows * cols)
      fail(ErrorKind::dimension_mismatch,
           "grid value count " + std::to_string(data_.size()) +
               " does not match " + std::to_string(rows) + "x" +
               std::to_string(cols));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  bool same_shape(const Grid2D& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealGrid2D = Grid2D<double>;
using SpectrumGrid = Grid2D<Complex>;

/// m x n x c real feature grid. Channels are stored contiguously (planar),
/// each channel being an m x n row-major plane.
class FeatureMap {
 public:
  FeatureMap() = default;

  FeatureMap(std::size_t rows, std::size_t cols, std::size_t channels,
             double fill = 0.0)
      : rows_(rows), cols_(cols), channels_(channels),
        data_(rows * cols * channels, fill) {
    require(rows >= 1 && cols >= 1 && channels >= 1,
            ErrorKind::invalid_argument,
            "feature map dimensions must be positive");
  }

  FeatureMap(std::size_t rows, std::size_t cols, std::size_t channels,
             std::vector<double> values)
      : rows_(rows), cols_(cols), channels_(channels),
        data_(std::move(values)) {
    require(rows >= 1 && cols >= 1 && channels >= 1,
            ErrorKind::invalid_argument,
            "feature map dimensions must be positive");
    require(data_.size() == rows * cols * channels,
            ErrorKind::dimension_mismatch,
            "feature value count does not match dimensions");
  }

  /// Single-channel map holding a copy of `g`.
  explicit FeatureMap(const RealGrid2D& g)
      : rows_(g.rows()), cols_(g.cols()), channels_(1),
        data_(g.values().begin(), g.values().end()) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t plane_size() const noexcept { return rows_ * cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c, std::size_t ch) {
    return data_[ch * rows_ * cols_ + r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c, std::size_t ch) const {
    return data_[ch * rows_ * cols_ + r * cols_ + c];
  }

  std::span<double> channel(std::size_t ch) {
    return {data_.data() + ch * plane_size(), plane_size()};
  }
  std::span<const double> channel(std::size_t ch) const {
    return {data_.data() + ch * plane_size(), plane_size()};
  }

  RealGrid2D channel_grid(std::size_t ch) const {
    auto plane = channel(ch);
    return RealGrid2D(rows_, cols_, std::vector<double>(plane.begin(), plane.end()));
  }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool same_shape(const FeatureMap& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t channels_ = 0;
  std::vector<double> data_;
};

inline std::string shape_string(std::size_t m, std::size_t n) {
  return std::to_string(m) + "x" + std::to_string(n);
}

inline std::string shape_string(const FeatureMap& f) {
  return std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + "x" +
         std::to_string(f.channels());
}

}  // namespace kcf

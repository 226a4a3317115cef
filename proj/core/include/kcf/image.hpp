#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kcf/error.hpp"

namespace kcf {

/// 8-bit image, 1 (gray) or 3 (RGB) interleaved channels, row-major.
class Image {
 public:
  Image() = default;

  Image(std::size_t rows, std::size_t cols, std::size_t channels,
        std::uint8_t fill = 0)
      : rows_(rows), cols_(cols), channels_(channels),
        pixels_(rows * cols * channels, fill) {
    validate();
  }

  Image(std::size_t rows, std::size_t cols, std::size_t channels,
        std::vector<std::uint8_t> pixels)
      : rows_(rows), cols_(cols), channels_(channels),
        pixels_(std::move(pixels)) {
    validate();
    require(pixels_.size() == rows * cols * channels,
            ErrorKind::dimension_mismatch,
            "image pixel count does not match dimensions");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t channels() const noexcept { return channels_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t& at(std::size_t r, std::size_t c, std::size_t ch = 0) {
    return pixels_[(r * cols_ + c) * channels_ + ch];
  }
  std::uint8_t at(std::size_t r, std::size_t c, std::size_t ch = 0) const {
    return pixels_[(r * cols_ + c) * channels_ + ch];
  }

  std::span<std::uint8_t> pixels() noexcept { return pixels_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  void validate() const {
    require(rows_ >= 1 && cols_ >= 1, ErrorKind::invalid_argument,
            "image dimensions must be positive");
    require(channels_ == 1 || channels_ == 3, ErrorKind::invalid_argument,
            "image must have 1 or 3 channels");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// A patch cut out of a frame is just a smaller image.
using ImagePatch = Image;

}  // namespace kcf

#pragma once

#include <string>
#include <utility>

#include "kcf/filter.hpp"
#include "kcf/grid.hpp"
#include "kcf/image.hpp"

namespace kcf {

enum class FeatureKind { raw, hog };

struct FeatureConfig {
  FeatureKind kind = FeatureKind::raw;
  int cell_size = 4;        // hog only
  int hog_orientations = 9; // 9 -> 18 signed + 9 unsigned + 4 texture = 31

  /// Pixels per feature cell along each axis.
  int cell() const noexcept { return kind == FeatureKind::hog ? cell_size : 1; }
};

inline constexpr std::size_t kHogChannels = 31;

std::string to_string(FeatureKind kind);

/// Gray level (601 luma for RGB) / 255 - 0.5, one channel, same size as p.
FeatureMap extract_raw(const ImagePatch& p);

/// Felzenszwalb's 31-channel HOG. Output is
/// (floor(rows/cell) - 2) x (floor(cols/cell) - 2) x 31: the outermost ring
/// of cells is dropped so every kept cell has four full normalization
/// blocks. Channels 0-17 contrast-sensitive orientations, 18-26
/// contrast-insensitive, 27-30 gradient energy.
FeatureMap extract_hog(const ImagePatch& p, const FeatureConfig& cfg);

/// Dispatch on cfg.kind.
FeatureMap extract_features(const ImagePatch& p, const FeatureConfig& cfg);

/// Every channel multiplied element-wise by the window.
FeatureMap apply_window(const FeatureMap& f, const CosineWindow& w);

/// Spatial size of the map extract_features produces for a patch.
std::pair<std::size_t, std::size_t> feature_size(std::size_t rows,
                                                 std::size_t cols,
                                                 const FeatureConfig& cfg);

}  // namespace kcf

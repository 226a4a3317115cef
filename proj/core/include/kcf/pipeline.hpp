#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "kcf/features.hpp"
#include "kcf/filter.hpp"
#include "kcf/image.hpp"
#include "kcf/kernels.hpp"

namespace kcf {

/// Axis-aligned box in 1-based pixel coordinates: the top-left pixel of a
/// frame has center (1, 1).
struct BoundingBox {
  double center_x = 0.0;
  double center_y = 0.0;
  double width = 0.0;
  double height = 0.0;

  /// From the x,y,w,h form of ground-truth files; center = x + (w - 1)/2.
  static BoundingBox from_xywh(double x, double y, double w, double h);
  double left() const noexcept { return center_x - (width - 1.0) / 2.0; }
  double top() const noexcept { return center_y - (height - 1.0) / 2.0; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct TrackerParams {
  double padding = 2.5;
  double lambda = 1e-4;
  double interp = 0.075;          // eta
  double bandwidth_factor = 0.1;  // s = sqrt(target cells) * factor
  KernelSpec kernel = KernelSpec::gaussian(0.2);
  FeatureConfig feature{};

  void validate() const;
};

/// Parameter sets of the four tracker variants.
enum class Preset { kcf_raw, kcf_hog, dcf_raw, dcf_hog };

TrackerParams make_params(Preset p);
std::optional<Preset> parse_preset(std::string_view name);

struct TrackerState {
  BoundingBox bbox;
  FilterModel model;
  CosineWindow window;
  TargetGrid target;
  int cell = 1;
  std::size_t window_rows = 0;  // pixel size of the extracted patch
  std::size_t window_cols = 0;
  TrackerParams params;
  std::uint64_t train_calls = 0;
  std::uint64_t detect_calls = 0;
};

/// Crop `rows x cols` pixels centered at (center_row, center_col), in
/// 0-based pixel coordinates rounded to the nearest pixel. Pixels outside
/// the frame replicate the nearest edge pixel.
ImagePatch get_subwindow(const Image& frame, double center_row,
                         double center_col, std::size_t rows,
                         std::size_t cols);

/// Signed displacement for a peak at index `peak` on a cyclic axis of
/// length `n`: indices above floor(n/2) wrap to negative values.
long unwrap_displacement(std::size_t peak, std::size_t n);

/// Row-major first occurrence of the maximum.
std::pair<std::size_t, std::size_t> argmax(const RealGrid2D& g);

TrackerState init(const Image& frame, const BoundingBox& bbox,
                  const TrackerParams& params);

/// Windowed features of the patch around `center` (1-based pixels).
FeatureMap sample_features(const TrackerState& state, const Image& frame,
                           double center_x, double center_y);

struct TrackResult {
  TrackerState state;
  BoundingBox bbox;
};

/// detect at the previous position, move to the peak, retrain there and
/// blend the new model in with rate params.interp.
TrackResult track_frame(const TrackerState& state, const Image& frame);

}  // namespace kcf

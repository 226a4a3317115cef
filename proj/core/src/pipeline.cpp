#include "kcf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kcf {

BoundingBox BoundingBox::from_xywh(double x, double y, double w, double h) {
  return {x + (w - 1.0) / 2.0, y + (h - 1.0) / 2.0, w, h};
}

void TrackerParams::validate() const {
  require(std::isfinite(padding) && padding >= 1.0, ErrorKind::invalid_argument,
          "padding must be >= 1");
  require(std::isfinite(lambda) && lambda >= 0.0, ErrorKind::invalid_argument,
          "lambda must be >= 0");
  require(interp >= 0.0 && interp <= 1.0, ErrorKind::invalid_argument,
          "interpolation rate must lie in [0, 1]");
  require(std::isfinite(bandwidth_factor) && bandwidth_factor > 0.0,
          ErrorKind::invalid_argument, "bandwidth factor must be positive");
  require(feature.cell_size >= 1, ErrorKind::invalid_argument,
          "cell size must be >= 1");
}

TrackerParams make_params(Preset p) {
  TrackerParams params;
  const bool hog = p == Preset::kcf_hog || p == Preset::dcf_hog;
  const bool gaussian = p == Preset::kcf_raw || p == Preset::kcf_hog;
  params.feature.kind = hog ? FeatureKind::hog : FeatureKind::raw;
  params.feature.cell_size = 4;
  params.interp = hog ? 0.02 : 0.075;
  params.kernel = gaussian ? KernelSpec::gaussian(hog ? 0.5 : 0.2)
                           : KernelSpec::linear();
  return params;
}

std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "kcf-raw") return Preset::kcf_raw;
  if (name == "kcf-hog") return Preset::kcf_hog;
  if (name == "dcf-raw") return Preset::dcf_raw;
  if (name == "dcf-hog") return Preset::dcf_hog;
  return std::nullopt;
}

ImagePatch get_subwindow(const Image& frame, double center_row,
                         double center_col, std::size_t rows,
                         std::size_t cols) {
  require(!frame.empty(), ErrorKind::invalid_argument,
          "get_subwindow: empty frame");
  require(rows >= 1 && cols >= 1, ErrorKind::invalid_argument,
          "get_subwindow: patch size must be positive");
  const long top = std::lround(center_row) - static_cast<long>(rows / 2);
  const long left = std::lround(center_col) - static_cast<long>(cols / 2);
  const long max_r = static_cast<long>(frame.rows()) - 1;
  const long max_c = static_cast<long>(frame.cols()) - 1;

  ImagePatch patch(rows, cols, frame.channels());
  for (std::size_t r = 0; r < rows; ++r) {
    const auto sr = static_cast<std::size_t>(
        std::clamp(top + static_cast<long>(r), 0L, max_r));
    for (std::size_t c = 0; c < cols; ++c) {
      const auto sc = static_cast<std::size_t>(
          std::clamp(left + static_cast<long>(c), 0L, max_c));
      for (std::size_t ch = 0; ch < frame.channels(); ++ch)
        patch.at(r, c, ch) = frame.at(sr, sc, ch);
    }
  }
  return patch;
}

long unwrap_displacement(std::size_t peak, std::size_t n) {
  const auto p = static_cast<long>(peak);
  return peak > n / 2 ? p - static_cast<long>(n) : p;
}

std::pair<std::size_t, std::size_t> argmax(const RealGrid2D& g) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] > g[best]) best = i;
  return {best / g.cols(), best % g.cols()};
}

FeatureMap sample_features(const TrackerState& state, const Image& frame,
                           double center_x, double center_y) {
  const ImagePatch patch =
      get_subwindow(frame, center_y - 1.0, center_x - 1.0, state.window_rows,
                    state.window_cols);
  return apply_window(extract_features(patch, state.params.feature),
                      state.window);
}

TrackerState init(const Image& frame, const BoundingBox& bbox,
                  const TrackerParams& params) {
  params.validate();
  require(std::isfinite(bbox.width) && std::isfinite(bbox.height) &&
              bbox.width > 0.0 && bbox.height > 0.0,
          ErrorKind::invalid_argument,
          "init: bounding box must have positive area");

  const auto padded = [&](double extent) {
    return static_cast<std::size_t>(
        std::max(1L, std::lround(extent * params.padding)));
  };
  const std::size_t win_rows = padded(bbox.height);
  const std::size_t win_cols = padded(bbox.width);
  const auto [feat_rows, feat_cols] =
      feature_size(win_rows, win_cols, params.feature);
  require(feat_rows >= 2 && feat_cols >= 2, ErrorKind::invalid_argument,
          "init: window of " + shape_string(win_rows, win_cols) +
              " px is too small for the chosen features");

  const int cell = params.feature.cell();
  const double s = std::sqrt(bbox.width * bbox.height) / cell *
                   params.bandwidth_factor;

  CosineWindow window = make_window(feat_rows, feat_cols);
  TargetGrid target = make_target(feat_rows, feat_cols, s);

  // Placeholder model until the first training pass below.
  TrackerState state{bbox,
                     FilterModel(SpectrumGrid(feat_rows, feat_cols),
                                 FeatureMap(feat_rows, feat_cols, 1),
                                 params.kernel, params.lambda),
                     std::move(window),
                     std::move(target),
                     cell,
                     win_rows,
                     win_cols,
                     params,
                     0,
                     0};
  const FeatureMap x =
      sample_features(state, frame, bbox.center_x, bbox.center_y);
  state.model = train(x, state.target, params.kernel, params.lambda);
  state.train_calls = 1;
  return state;
}

TrackResult track_frame(const TrackerState& state, const Image& frame) {
  TrackerState next = state;

  const FeatureMap z =
      sample_features(state, frame, state.bbox.center_x, state.bbox.center_y);
  const RealGrid2D response = detect(state.model, z);
  ++next.detect_calls;

  const auto [pr, pc] = argmax(response);
  const long du = unwrap_displacement(pr, response.rows());
  const long dv = unwrap_displacement(pc, response.cols());
  next.bbox.center_x += static_cast<double>(dv * state.cell);
  next.bbox.center_y += static_cast<double>(du * state.cell);

  const FeatureMap x =
      sample_features(next, frame, next.bbox.center_x, next.bbox.center_y);
  const FilterModel fresh =
      train(x, state.target, state.params.kernel, state.params.lambda);
  ++next.train_calls;
  next.model = interpolate_model(state.model, fresh, state.params.interp);

  const BoundingBox bbox = next.bbox;
  return {std::move(next), bbox};
}

}  // namespace kcf

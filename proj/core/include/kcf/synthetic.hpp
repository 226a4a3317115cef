#pragma once

#include <cstdint>
#include <vector>

#include "kcf/image.hpp"
#include "kcf/pipeline.hpp"

namespace kcf::synthetic {

/// A textured square gliding at constant velocity over a noisy background.
struct SceneSpec {
  std::size_t frame_rows = 200;
  std::size_t frame_cols = 200;
  std::size_t square = 64;
  std::size_t frames = 50;
  double start_x = 20.0;  // 0-based top-left of the square in frame 0
  double start_y = 20.0;
  double velocity_x = 2.1213203435596424;  // 3 px/frame along the diagonal
  double velocity_y = 2.1213203435596424;
  double noise_sigma = 8.0;
  std::uint64_t seed = 1;
};

struct Scene {
  std::vector<Image> frames;
  std::vector<BoundingBox> truth;
};

/// Deterministic for a given spec (the texture and the per-frame noise are
/// both drawn from `seed`).
Scene translating_square(const SceneSpec& spec);

}  // namespace kcf::synthetic

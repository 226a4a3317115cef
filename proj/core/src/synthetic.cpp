#include "kcf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace kcf::synthetic {
namespace {

struct Wave {
  double fx, fy, phase, amplitude;
};

std::uint8_t to_pixel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

Scene translating_square(const SceneSpec& spec) {
  require(spec.frames >= 1 && spec.square >= 1, ErrorKind::invalid_argument,
          "synthetic scene: need at least one frame and a non-empty square");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> freq(0.05, 0.35);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);

  std::vector<Wave> waves;
  for (int k = 0; k < 12; ++k) {
    const double angle = phase(rng);
    const double f = freq(rng);
    waves.push_back({f * std::cos(angle), f * std::sin(angle), phase(rng),
                     60.0 / 12.0 * 2.0});
  }
  auto texture = [&](double u, double v) {
    double s = 0.0;
    for (const Wave& w : waves)
      s += w.amplitude * std::sin(2.0 * std::numbers::pi * (w.fx * u + w.fy * v) +
                                  w.phase);
    return 128.0 + s;
  };

  Scene scene;
  const auto side = static_cast<double>(spec.square);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const double x0 = spec.start_x + spec.velocity_x * static_cast<double>(t);
    const double y0 = spec.start_y + spec.velocity_y * static_cast<double>(t);
    Image frame(spec.frame_rows, spec.frame_cols, 1);
    for (std::size_t r = 0; r < spec.frame_rows; ++r) {
      const double v = static_cast<double>(r) - y0;
      for (std::size_t c = 0; c < spec.frame_cols; ++c) {
        const double u = static_cast<double>(c) - x0;
        const bool inside = u >= 0.0 && u < side && v >= 0.0 && v < side;
        const double base = inside ? texture(u, v) : 90.0;
        frame.at(r, c) = to_pixel(base + noise(rng));
      }
    }
    scene.frames.push_back(std::move(frame));
    scene.truth.push_back(BoundingBox::from_xywh(x0 + 1.0, y0 + 1.0, side, side));
  }
  return scene;
}

}  // namespace kcf::synthetic

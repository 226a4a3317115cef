#include "kcf/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace kcf {
namespace {

// Unit vectors of the 9 unsigned orientation bins, 20 degrees apart.
constexpr std::array<double, 9> kUu = {1.0000, 0.9397, 0.7660, 0.5000, 0.1736,
                                       -0.1736, -0.5000, -0.7660, -0.9397};
constexpr std::array<double, 9> kVv = {0.0000, 0.3420, 0.6428, 0.8660, 0.9848,
                                       0.9848, 0.8660, 0.6428, 0.3420};

constexpr double kNormEps = 1e-7;
constexpr double kTruncate = 0.2;
constexpr double kTextureScale = 0.2357;

double gray(const ImagePatch& p, std::size_t r, std::size_t c) {
  if (p.channels() == 1) return p.at(r, c);
  return 0.299 * p.at(r, c, 0) + 0.587 * p.at(r, c, 1) + 0.114 * p.at(r, c, 2);
}

}  // namespace

std::string to_string(FeatureKind kind) {
  return kind == FeatureKind::hog ? "hog" : "raw";
}

FeatureMap extract_raw(const ImagePatch& p) {
  FeatureMap f(p.rows(), p.cols(), 1);
  for (std::size_t r = 0; r < p.rows(); ++r)
    for (std::size_t c = 0; c < p.cols(); ++c)
      f(r, c, 0) = gray(p, r, c) / 255.0 - 0.5;
  return f;
}

std::pair<std::size_t, std::size_t> feature_size(std::size_t rows,
                                                 std::size_t cols,
                                                 const FeatureConfig& cfg) {
  if (cfg.kind == FeatureKind::raw) return {rows, cols};
  const auto cell = static_cast<std::size_t>(cfg.cell_size);
  const std::size_t br = rows / cell, bc = cols / cell;
  return {br >= 2 ? br - 2 : 0, bc >= 2 ? bc - 2 : 0};
}

FeatureMap extract_hog(const ImagePatch& p, const FeatureConfig& cfg) {
  require(cfg.cell_size >= 1, ErrorKind::invalid_argument,
          "hog: cell size must be >= 1");
  require(cfg.hog_orientations == 9, ErrorKind::invalid_argument,
          "hog: only the 9-orientation (31-channel) variant is supported");
  const auto cell = static_cast<std::size_t>(cfg.cell_size);
  require(p.rows() >= 3 * cell && p.cols() >= 3 * cell,
          ErrorKind::invalid_argument,
          "hog: patch " + shape_string(p.rows(), p.cols()) +
              " is smaller than 3 cells of " + std::to_string(cell) + " px");

  const std::size_t brows = p.rows() / cell, bcols = p.cols() / cell;
  const std::size_t vis_rows = brows * cell, vis_cols = bcols * cell;
  const std::size_t nblocks = brows * bcols;

  // hist[o * nblocks + by * bcols + bx]
  std::vector<double> hist(18 * nblocks, 0.0);

  for (std::size_t y = 1; y + 1 < vis_rows; ++y) {
    for (std::size_t x = 1; x + 1 < vis_cols; ++x) {
      // Gradient of the color channel with the largest magnitude.
      double best_v = -1.0, dx = 0.0, dy = 0.0;
      for (std::size_t ch = 0; ch < p.channels(); ++ch) {
        const double gy = double(p.at(y + 1, x, ch)) - double(p.at(y - 1, x, ch));
        const double gx = double(p.at(y, x + 1, ch)) - double(p.at(y, x - 1, ch));
        const double v = gx * gx + gy * gy;
        if (v > best_v) {
          best_v = v;
          dx = gx;
          dy = gy;
        }
      }

      // Snap to one of 18 signed orientations.
      double best_dot = 0.0;
      std::size_t best_o = 0;
      for (std::size_t o = 0; o < 9; ++o) {
        const double d = kUu[o] * dx + kVv[o] * dy;
        if (d > best_dot) {
          best_dot = d;
          best_o = o;
        } else if (-d > best_dot) {
          best_dot = -d;
          best_o = o + 9;
        }
      }

      // Bilinear vote into the four surrounding cells.
      const double xp = (double(x) + 0.5) / double(cell) - 0.5;
      const double yp = (double(y) + 0.5) / double(cell) - 0.5;
      const auto ixp = static_cast<long>(std::floor(xp));
      const auto iyp = static_cast<long>(std::floor(yp));
      const double vx0 = xp - double(ixp), vy0 = yp - double(iyp);
      const double vx1 = 1.0 - vx0, vy1 = 1.0 - vy0;
      const double mag = std::sqrt(best_v);
      double* h = hist.data() + best_o * nblocks;
      const auto bc = static_cast<long>(bcols), br = static_cast<long>(brows);
      auto vote = [&](long by, long bx, double w) {
        if (by >= 0 && bx >= 0 && by < br && bx < bc)
          h[static_cast<std::size_t>(by) * bcols + static_cast<std::size_t>(bx)] +=
              w * mag;
      };
      vote(iyp, ixp, vy1 * vx1);
      vote(iyp, ixp + 1, vy1 * vx0);
      vote(iyp + 1, ixp, vy0 * vx1);
      vote(iyp + 1, ixp + 1, vy0 * vx0);
    }
  }

  // Energy of each cell over the unsigned orientations.
  std::vector<double> energy(nblocks, 0.0);
  for (std::size_t o = 0; o < 9; ++o)
    for (std::size_t b = 0; b < nblocks; ++b) {
      const double s = hist[o * nblocks + b] + hist[(o + 9) * nblocks + b];
      energy[b] += s * s;
    }

  const std::size_t out_rows = brows - 2, out_cols = bcols - 2;
  FeatureMap f(out_rows, out_cols, kHogChannels);
  auto block_norm = [&](std::size_t by, std::size_t bx) {
    const double s = energy[by * bcols + bx] + energy[by * bcols + bx + 1] +
                     energy[(by + 1) * bcols + bx] +
                     energy[(by + 1) * bcols + bx + 1];
    return 1.0 / std::sqrt(s + kNormEps);
  };

  for (std::size_t y = 0; y < out_rows; ++y) {
    for (std::size_t x = 0; x < out_cols; ++x) {
      // The four 2x2 blocks containing cell (y+1, x+1).
      const std::array<double, 4> n = {block_norm(y + 1, x + 1),
                                       block_norm(y, x + 1),
                                       block_norm(y + 1, x), block_norm(y, x)};
      const std::size_t cell_idx = (y + 1) * bcols + (x + 1);
      std::array<double, 4> texture{};

      for (std::size_t o = 0; o < 18; ++o) {
        const double v = hist[o * nblocks + cell_idx];
        double sum = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
          const double t = std::min(v * n[k], kTruncate);
          sum += t;
          texture[k] += t;
        }
        f(y, x, o) = 0.5 * sum;
      }
      for (std::size_t o = 0; o < 9; ++o) {
        const double v =
            hist[o * nblocks + cell_idx] + hist[(o + 9) * nblocks + cell_idx];
        double sum = 0.0;
        for (std::size_t k = 0; k < 4; ++k) sum += std::min(v * n[k], kTruncate);
        f(y, x, 18 + o) = 0.5 * sum;
      }
      for (std::size_t k = 0; k < 4; ++k)
        f(y, x, 27 + k) = kTextureScale * texture[k];
    }
  }
  return f;
}

FeatureMap extract_features(const ImagePatch& p, const FeatureConfig& cfg) {
  return cfg.kind == FeatureKind::hog ? extract_hog(p, cfg) : extract_raw(p);
}

FeatureMap apply_window(const FeatureMap& f, const CosineWindow& w) {
  require(f.rows() == w.w.rows() && f.cols() == w.w.cols(),
          ErrorKind::dimension_mismatch,
          "apply_window: features " + shape_string(f) + " vs window " +
              shape_string(w.w.rows(), w.w.cols()));
  FeatureMap out = f;
  const auto win = w.w.values();
  for (std::size_t c = 0; c < out.channels(); ++c) {
    auto plane = out.channel(c);
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] *= win[i];
  }
  return out;
}

}  // namespace kcf

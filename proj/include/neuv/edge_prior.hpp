// Self-contained Canny edge detection and lifting of edge-labeled pixels
// to world-frame points for dense-voxel generation.
#pragma once

#include <vector>

#include "neuv/frame.hpp"
#include "neuv/geometry.hpp"

namespace neuv {

struct EdgeMask {
  int width = 0, height = 0;
  std::vector<uint8_t> bits;  // 0/1 per pixel

  bool at(int u, int v) const { return bits[static_cast<size_t>(v) * width + u] != 0; }
};

struct LabeledPoint {
  Vec3 point;
  bool is_edge = false;
};
using LabeledCloud = std::vector<LabeledPoint>;

// ITU-R BT.601 luma in [0,255].
std::vector<double> to_grayscale(const Frame& frame);

// 5x5 Gaussian (sigma 1.4) -> 3x3 Sobel -> 4-bin NMS -> hysteresis.
// Requires 0 < low < high.
EdgeMask canny(const std::vector<double>& gray, int width, int height,
               double low, double high);
EdgeMask canny(const Frame& frame, double low, double high);

// Back-projects every stride-th valid-depth pixel with its edge label.
LabeledCloud label_cloud(const Frame& frame, const EdgeMask& mask,
                         const Camera& cam, const Pose& pose, int stride);

}  // namespace neuv

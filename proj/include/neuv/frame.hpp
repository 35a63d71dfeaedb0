#pragma once

#include <cstdint>
#include <vector>

namespace neuv {

// RGBD frame. Color channels in [0,1]; depth in meters, 0 = invalid.
struct Frame {
  int width = 0, height = 0;
  double timestamp = 0.0;
  std::vector<double> rgb;    // 3 * width * height, row-major, interleaved
  std::vector<double> depth;  // width * height

  void resize(int w, int h) {
    width = w;
    height = h;
    rgb.assign(static_cast<size_t>(3) * w * h, 0.0);
    depth.assign(static_cast<size_t>(w) * h, 0.0);
  }

  double* rgb_at(int u, int v) { return &rgb[3 * (static_cast<size_t>(v) * width + u)]; }
  const double* rgb_at(int u, int v) const {
    return &rgb[3 * (static_cast<size_t>(v) * width + u)];
  }
  double& depth_at(int u, int v) { return depth[static_cast<size_t>(v) * width + u]; }
  double depth_at(int u, int v) const { return depth[static_cast<size_t>(v) * width + u]; }
};

}  // namespace neuv

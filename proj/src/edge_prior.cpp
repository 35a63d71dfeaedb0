#include "neuv/edge_prior.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace neuv {

std::vector<double> to_grayscale(const Frame& frame) {
  std::vector<double> gray(static_cast<size_t>(frame.width) * frame.height);
  for (size_t i = 0; i < gray.size(); ++i) {
    const double* c = &frame.rgb[3 * i];
    gray[i] = 255.0 * (0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2]);
  }
  return gray;
}

namespace {

// Clamped-border convolution with a separable odd kernel.
std::vector<double> blur5(const std::vector<double>& img, int w, int h) {
  // 5-tap Gaussian, sigma = 1.4, normalized.
  double k[5];
  double sum = 0;
  for (int i = 0; i < 5; ++i) {
    const double x = i - 2;
    k[i] = std::exp(-x * x / (2.0 * 1.4 * 1.4));
    sum += k[i];
  }
  for (double& v : k) v /= sum;

  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  std::vector<double> tmp(img.size()), out(img.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int i = -2; i <= 2; ++i)
        acc += k[i + 2] * img[static_cast<size_t>(y) * w + clampi(x + i, 0, w - 1)];
      tmp[static_cast<size_t>(y) * w + x] = acc;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int i = -2; i <= 2; ++i)
        acc += k[i + 2] * tmp[static_cast<size_t>(clampi(y + i, 0, h - 1)) * w + x];
      out[static_cast<size_t>(y) * w + x] = acc;
    }
  return out;
}

}  // namespace

EdgeMask canny(const std::vector<double>& gray, int width, int height,
               double low, double high) {
  if (!(low > 0) || !(low < high))
    throw std::invalid_argument("canny: thresholds must satisfy 0 < low < high");

  const std::vector<double> smooth = blur5(gray, width, height);

  const size_t n = static_cast<size_t>(width) * height;
  std::vector<double> mag(n, 0.0);
  std::vector<int> dir(n, 0);  // 0: horiz, 1: 45deg, 2: vert, 3: 135deg
  auto at = [&](int x, int y) { return smooth[static_cast<size_t>(y) * width + x]; };
  for (int y = 1; y < height - 1; ++y)
    for (int x = 1; x < width - 1; ++x) {
      const double gx = -at(x - 1, y - 1) + at(x + 1, y - 1) - 2 * at(x - 1, y) +
                        2 * at(x + 1, y) - at(x - 1, y + 1) + at(x + 1, y + 1);
      const double gy = at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1) -
                        at(x - 1, y - 1) - 2 * at(x, y - 1) - at(x + 1, y - 1);
      const size_t i = static_cast<size_t>(y) * width + x;
      mag[i] = std::hypot(gx, gy);
      double angle = std::atan2(gy, gx) * 180.0 / M_PI;
      if (angle < 0) angle += 180.0;
      if (angle < 22.5 || angle >= 157.5)
        dir[i] = 0;
      else if (angle < 67.5)
        dir[i] = 1;
      else if (angle < 112.5)
        dir[i] = 2;
      else
        dir[i] = 3;
    }

  // Non-maximum suppression along the quantized gradient direction.
  static const int offs[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
  std::vector<uint8_t> strong(n, 0), weak(n, 0);
  for (int y = 1; y < height - 1; ++y)
    for (int x = 1; x < width - 1; ++x) {
      const size_t i = static_cast<size_t>(y) * width + x;
      if (mag[i] < low) continue;
      const int dx = offs[dir[i]][0], dy = offs[dir[i]][1];
      const double a = mag[static_cast<size_t>(y + dy) * width + (x + dx)];
      const double b = mag[static_cast<size_t>(y - dy) * width + (x - dx)];
      if (mag[i] < a || mag[i] < b) continue;
      if (mag[i] >= high)
        strong[i] = 1;
      else
        weak[i] = 1;
    }

  // Hysteresis: weak pixels survive iff 8-connected to a strong pixel.
  EdgeMask mask;
  mask.width = width;
  mask.height = height;
  mask.bits.assign(n, 0);
  std::deque<std::pair<int, int>> queue;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (strong[static_cast<size_t>(y) * width + x]) {
        mask.bits[static_cast<size_t>(y) * width + x] = 1;
        queue.emplace_back(x, y);
      }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        const size_t i = static_cast<size_t>(ny) * width + nx;
        if (weak[i] && !mask.bits[i]) {
          mask.bits[i] = 1;
          queue.emplace_back(nx, ny);
        }
      }
  }
  return mask;
}

EdgeMask canny(const Frame& frame, double low, double high) {
  return canny(to_grayscale(frame), frame.width, frame.height, low, high);
}

LabeledCloud label_cloud(const Frame& frame, const EdgeMask& mask,
                         const Camera& cam, const Pose& pose, int stride) {
  if (mask.width != frame.width || mask.height != frame.height)
    throw std::invalid_argument("label_cloud: mask/frame dimension mismatch");
  if (stride < 1) throw std::invalid_argument("label_cloud: stride must be >= 1");

  LabeledCloud cloud;
  for (int v = 0; v < frame.height; v += stride)
    for (int u = 0; u < frame.width; u += stride) {
      const double d = frame.depth_at(u, v);
      if (d <= 0) continue;
      cloud.push_back({backproject(u, v, d, cam, pose), mask.at(u, v)});
    }
  return cloud;
}

}  // namespace neuv

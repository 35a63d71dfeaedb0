#include "neuv/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace neuv {

Vec3 AnalyticScene::normal(const Vec3& p, double h) const {
  Vec3 n;
  for (int a = 0; a < 3; ++a) {
    Vec3 dp = Vec3::Zero();
    dp[a] = h;
    n[a] = (sdf(p + dp) - sdf(p - dp)) / (2 * h);
  }
  const double len = n.norm();
  return len > 0 ? Vec3(n / len) : Vec3::UnitZ();
}

double sdf_sphere(const Vec3& p, const Vec3& center, double radius) {
  return (p - center).norm() - radius;
}

double sdf_box(const Vec3& p, const Vec3& center, const Vec3& half_extent) {
  const Vec3 q = (p - center).cwiseAbs() - half_extent;
  const double outside = q.cwiseMax(0.0).norm();
  const double inside = std::min(q.maxCoeff(), 0.0);
  return outside + inside;
}

Eigen::Vector3d checker_albedo(const Vec3& p) {
  int64_t parity = 0;
  for (int a = 0; a < 3; ++a)
    parity += static_cast<int64_t>(std::floor(p[a] / 0.1));
  return (parity % 2 + 2) % 2 == 0 ? Eigen::Vector3d(0.85, 0.35, 0.25)
                                   : Eigen::Vector3d(0.25, 0.45, 0.85);
}

AnalyticScene make_sphere_scene() {
  AnalyticScene s;
  s.sdf = [](const Vec3& p) { return sdf_sphere(p, Vec3::Zero(), 0.5); };
  s.albedo = checker_albedo;
  s.aabb_min = Vec3::Constant(-0.6);
  s.aabb_max = Vec3::Constant(0.6);
  return s;
}

AnalyticScene make_room_scene() {
  AnalyticScene s;
  const Vec3 room_center(1.0, 1.0, 1.0);
  s.sdf = [room_center](const Vec3& p) {
    // Inverted box: positive inside the room, zero on the walls.
    const double shell = -sdf_box(p, room_center, Vec3::Constant(1.0));
    const double ball = sdf_sphere(p, Vec3(1.35, 0.75, 0.85), 0.3);
    const double crate =
        sdf_box(p, Vec3(0.55, 1.35, 0.70), Vec3(0.18, 0.22, 0.28));
    return std::min({shell, ball, crate});
  };
  s.albedo = checker_albedo;
  s.aabb_min = Vec3::Constant(-0.1);
  s.aabb_max = Vec3::Constant(2.1);
  return s;
}

std::optional<double> sphere_trace(const AnalyticScene& scene, const Ray& ray,
                                   double t_max, double eps) {
  double t = 0.0;
  for (int iter = 0; iter < 512; ++iter) {
    const double d = scene.sdf(ray.origin + t * ray.direction);
    if (d < eps) return t;
    t += d;
    if (t > t_max) return std::nullopt;
  }
  return std::nullopt;
}

Frame render_frame(const AnalyticScene& scene, const Pose& pose,
                   const Camera& cam, double t_max) {
  cam.validate();
  const Vec3 light = Vec3(0.4, 0.5, 0.8).normalized();
  const double ambient = 0.35;

  Frame frame;
  frame.resize(cam.width, cam.height);
  for (int v = 0; v < cam.height; ++v)
    for (int u = 0; u < cam.width; ++u) {
      const Ray ray = pixel_ray(u, v, cam, pose);
      const auto t = sphere_trace(scene, ray, t_max);
      if (!t) continue;
      const Vec3 hit = ray.origin + *t * ray.direction;
      frame.depth_at(u, v) = *t / ray_depth_scale(u, v, cam);
      const Vec3 n = scene.normal(hit);
      const double shade =
          ambient + (1.0 - ambient) * std::max(0.0, n.dot(light));
      const Eigen::Vector3d c = scene.albedo(hit) * shade;
      double* px = frame.rgb_at(u, v);
      for (int k = 0; k < 3; ++k) px[k] = std::clamp(c[k], 0.0, 1.0);
    }
  return frame;
}

std::vector<Pose> orbit_trajectory(const Vec3& center, double radius,
                                   int n_frames, double height_offset) {
  if (n_frames < 1 || !(radius > 0))
    throw std::invalid_argument("orbit_trajectory: bad n_frames or radius");

  std::vector<Pose> poses;
  poses.reserve(n_frames);
  for (int i = 0; i < n_frames; ++i) {
    const double az = 2.0 * M_PI * i / n_frames;
    const Vec3 eye = center + Vec3(radius * std::cos(az),
                                   radius * std::sin(az), height_offset);
    const Vec3 fwd = (center - eye).normalized();
    Vec3 right = fwd.cross(Vec3::UnitZ());
    if (right.norm() < 1e-12) right = Vec3::UnitX();
    right.normalize();
    const Vec3 down = fwd.cross(right).normalized();

    Pose p;
    p.rotation.col(0) = right;  // camera x
    p.rotation.col(1) = down;   // camera y
    p.rotation.col(2) = fwd;    // optical axis
    p.translation = eye;
    poses.push_back(p);
  }
  return poses;
}

}  // namespace neuv

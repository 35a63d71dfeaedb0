// Analytic SDF scenes with a sphere-tracing RGBD renderer; the ground-truth
// oracle used by the test suites in place of real sensor data.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "neuv/frame.hpp"
#include "neuv/geometry.hpp"

namespace neuv {

struct AnalyticScene {
  std::function<double(const Vec3&)> sdf;
  std::function<Eigen::Vector3d(const Vec3&)> albedo;  // RGB in [0,1]
  Vec3 aabb_min = Vec3::Constant(-2.0);
  Vec3 aabb_max = Vec3::Constant(2.0);

  Vec3 normal(const Vec3& p, double h = 1e-5) const;
};

double sdf_sphere(const Vec3& p, const Vec3& center, double radius);
double sdf_box(const Vec3& p, const Vec3& center, const Vec3& half_extent);

// Axis-aligned two-color checkerboard, 0.1 m period.
Eigen::Vector3d checker_albedo(const Vec3& p);

// Sphere of radius 0.5 at the origin.
AnalyticScene make_sphere_scene();
// Box-shell interior [0,2]^3 with a sphere and a box inside; large flat
// walls feed sparse voxels, curved silhouettes feed dense ones.
AnalyticScene make_room_scene();

std::optional<double> sphere_trace(const AnalyticScene& scene, const Ray& ray,
                                   double t_max, double eps = 1e-6);

// Per-pixel sphere tracing; depth stores camera z (0 = miss), color is
// Lambertian-shaded albedo from a fixed directional light.
Frame render_frame(const AnalyticScene& scene, const Pose& pose,
                   const Camera& cam, double t_max = 20.0);

// Equally spaced azimuth ring at fixed height, optical axis through center.
std::vector<Pose> orbit_trajectory(const Vec3& center, double radius,
                                   int n_frames, double height_offset = 0.0);

}  // namespace neuv

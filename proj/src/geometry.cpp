#include "neuv/geometry.hpp"

#include <cmath>

namespace neuv {

void Camera::validate() const {
  if (fx <= 0 || fy <= 0) throw std::invalid_argument("camera: fx, fy must be > 0");
  if (width <= 0 || height <= 0) throw std::invalid_argument("camera: empty image");
  if (cx < 0 || cx >= width || cy < 0 || cy >= height)
    throw std::invalid_argument("camera: principal point outside image");
  if (depth_scale <= 0) throw std::invalid_argument("camera: depth_scale must be > 0");
}

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

Pose se3_exp(const Vec6& twist) {
  const Vec3 omega = twist.head<3>();
  const Vec3 v = twist.tail<3>();
  const double theta = omega.norm();
  const Mat3 w = skew(omega);
  double a, b, c;  // R = I + a*w + b*w^2, V = I + b*w + c*w^2
  if (theta < 1e-8) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0;
    b = 0.5 - t2 / 24.0;
    c = 1.0 / 6.0 - t2 / 120.0;
  } else {
    const double t2 = theta * theta;
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / t2;
    c = (theta - std::sin(theta)) / (t2 * theta);
  }
  Pose p;
  p.rotation = Mat3::Identity() + a * w + b * w * w;
  const Mat3 V = Mat3::Identity() + b * w + c * w * w;
  p.translation = V * v;
  return p;
}

Vec6 se3_log(const Pose& p) {
  const double cos_theta =
      std::clamp((p.rotation.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  if (std::abs(theta - M_PI) < 1e-9)
    throw std::domain_error("se3_log: rotation angle at pi, branch ambiguous");

  Vec3 omega;
  const Mat3 anti = (p.rotation - p.rotation.transpose()) / 2.0;
  const Vec3 axis_sin(anti(2, 1), anti(0, 2), anti(1, 0));
  if (theta < 1e-8) {
    omega = axis_sin;  // sin x ~ x
  } else {
    omega = axis_sin * (theta / std::sin(theta));
  }

  const Mat3 w = skew(omega);
  double b, c;
  if (theta < 1e-8) {
    const double t2 = theta * theta;
    b = 0.5 - t2 / 24.0;
    c = 1.0 / 6.0 - t2 / 120.0;
  } else {
    const double t2 = theta * theta;
    b = (1.0 - std::cos(theta)) / t2;
    c = (theta - std::sin(theta)) / (t2 * theta);
  }
  const Mat3 V = Mat3::Identity() + b * w + c * w * w;
  const Vec3 v = V.inverse() * p.translation;

  Vec6 twist;
  twist << omega, v;
  return twist;
}

Vec3 backproject(double u, double v, double depth, const Camera& cam,
                 const Pose& pose) {
  if (depth <= 0) throw std::invalid_argument("backproject: depth must be > 0");
  const Vec3 local((u - cam.cx) / cam.fx * depth, (v - cam.cy) / cam.fy * depth,
                   depth);
  return pose.apply(local);
}

Eigen::Vector2d project(const Vec3& world, const Camera& cam,
                        const Pose& pose) {
  const Vec3 local = pose.inverse().apply(world);
  if (local.z() <= 0)
    throw std::invalid_argument("project: point behind camera");
  return {cam.fx * local.x() / local.z() + cam.cx,
          cam.fy * local.y() / local.z() + cam.cy};
}

Ray pixel_ray(double u, double v, const Camera& cam, const Pose& pose) {
  const Vec3 local((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
  Ray r;
  r.origin = pose.translation;
  r.direction = (pose.rotation * local).normalized();
  return r;
}

double ray_depth_scale(double u, double v, const Camera& cam) {
  const Vec3 local((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
  return local.norm();
}

}  // namespace neuv

// SE(3) poses, pinhole camera model, rays.
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <stdexcept>

namespace neuv {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// Rigid transform: world point = R * local + t.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Pose identity() { return {}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  Pose compose(const Pose& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }

  Pose inverse() const {
    Mat3 rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

struct Camera {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  int width = 0, height = 0;
  double depth_scale = 1.0;  // raw depth unit -> meters

  void validate() const;
  bool contains(double u, double v) const {
    return u >= 0 && u < width && v >= 0 && v < height;
  }
};

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();  // unit norm
};

Mat3 skew(const Vec3& v);

// Rodrigues exponential map, twist = [omega; v].
Pose se3_exp(const Vec6& twist);

// Principal-branch inverse of se3_exp. Throws std::domain_error within
// 1e-9 of the pi-rotation branch ambiguity.
Vec6 se3_log(const Pose& p);

// World point = pose o (depth * K^-1 [u, v, 1]). depth is camera-frame z.
Vec3 backproject(double u, double v, double depth, const Camera& cam,
                 const Pose& pose);

// Camera-frame point -> pixel. Throws if z <= 0.
Eigen::Vector2d project(const Vec3& world, const Camera& cam,
                        const Pose& pose);

Ray pixel_ray(double u, double v, const Camera& cam, const Pose& pose);

// Norm of K^-1 [u, v, 1]: converts z-depth to distance along the unit ray.
double ray_depth_scale(double u, double v, const Camera& cam);

}  // namespace neuv

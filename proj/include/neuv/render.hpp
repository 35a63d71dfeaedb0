// Ray-voxel traversal, uniform multiresolution sampling, and SDF-weighted
// volume rendering of depth and color.
#pragma once

#include <vector>

#include "neuv/field.hpp"
#include "neuv/geometry.hpp"
#include "neuv/hashmv.hpp"

namespace neuv {

struct RayIntervals {
  std::vector<std::pair<double, double>> spans;  // disjoint, ascending
};

struct RenderConfig {
  double step = 0.1;      // S, sampling step in meters
  double trunc = 0.05;    // st, SDF truncation distance in meters
  double t_min = 0.05;
  double t_max = 8.0;
  int max_samples_per_ray = 256;
  bool sdf_activation = true;  // ablation hook: identity when false
  double hit_eps = 1e-6;       // minimum weight sum for a ray to count

  void validate() const;
};

// Incremental integer lattice walk over one level; adjacent allocated
// cells coalesce into a single interval.
RayIntervals traverse(const Ray& ray, const VoxelStore& store, Level level,
                      double t_min, double t_max);

// Mid-cell depths t_enter + (k + 1/2) * step, capped at max_samples.
std::vector<double> sample_intervals(const RayIntervals& intervals,
                                     double step, int max_samples);

struct TaggedDepth {
  double t;
  Level level;
};

// Stable ascending merge; exact ties keep Dense before Sparse.
std::vector<TaggedDepth> merge_sorted(const std::vector<double>& dense,
                                      const std::vector<double>& sparse);

// Eq.-9 weight: sigm(s/st) * sigm(-s/st); peaks at 0.25 on the zero set.
double render_weight(double sdf, double trunc);

struct RaySample {
  double t = 0;            // distance along the unit-direction ray
  double depth = 0;        // camera z-depth for rendering
  Level level = Level::Sparse;
  double sdf = 0;
  double weight = 0;
  Eigen::Vector3d rgb = Eigen::Vector3d::Zero();
  bool active = true;      // false once truncated behind the surface
};

struct RayRender {
  double depth = 0;
  Eigen::Vector3d color = Eigen::Vector3d::Zero();
  double weight_sum = 0;
  bool hit = false;
};

// Marks samples more than trunc behind the first zero crossing inactive,
// then renders normalized sums over the remaining ones.
RayRender render_ray(std::vector<RaySample>& samples, double trunc,
                     double hit_eps);

// Full forward query of one ray against the field (no gradients).
RayRender render_field_ray(const Ray& ray, const VoxelStore& store,
                           const VertexBank& bank, const Decoder& decoder,
                           const RenderConfig& cfg);

}  // namespace neuv

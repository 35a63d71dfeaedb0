#include "neuv/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace neuv {

void RenderConfig::validate() const {
  if (!(step > 0)) throw std::invalid_argument("render: step must be > 0");
  if (!(trunc > 0)) throw std::invalid_argument("render: trunc must be > 0");
  if (!(t_min < t_max)) throw std::invalid_argument("render: t_min >= t_max");
  if (max_samples_per_ray < 1)
    throw std::invalid_argument("render: max_samples_per_ray < 1");
}

RayIntervals traverse(const Ray& ray, const VoxelStore& store, Level level,
                      double t_min, double t_max) {
  RayIntervals out;
  if (store.voxel_count() == 0 || !(t_min < t_max)) return out;

  const double e = store.edge_len(level);
  const Vec3& o = ray.origin;
  const Vec3& d = ray.direction;

  const Vec3 start = o + t_min * d;
  int64_t cell[3] = {static_cast<int64_t>(std::floor(start.x() / e)),
                     static_cast<int64_t>(std::floor(start.y() / e)),
                     static_cast<int64_t>(std::floor(start.z() / e))};
  double t_next[3];
  double t_delta[3];
  int step_dir[3];
  for (int a = 0; a < 3; ++a) {
    if (d[a] > 0) {
      step_dir[a] = 1;
      t_next[a] = ((cell[a] + 1) * e - o[a]) / d[a];
      t_delta[a] = e / d[a];
    } else if (d[a] < 0) {
      step_dir[a] = -1;
      t_next[a] = (cell[a] * e - o[a]) / d[a];
      t_delta[a] = -e / d[a];
    } else {
      step_dir[a] = 0;
      t_next[a] = std::numeric_limits<double>::infinity();
      t_delta[a] = std::numeric_limits<double>::infinity();
    }
  }

  double t_cur = t_min;
  bool open = false;
  while (t_cur < t_max) {
    int axis = 0;
    if (t_next[1] < t_next[axis]) axis = 1;
    if (t_next[2] < t_next[axis]) axis = 2;
    const double t_exit = std::min(t_next[axis], t_max);

    const bool occupied =
        store.find({cell[0], cell[1], cell[2], level}) != nullptr;
    if (occupied) {
      if (open && std::abs(out.spans.back().second - t_cur) < 1e-12) {
        out.spans.back().second = t_exit;
      } else {
        out.spans.emplace_back(t_cur, t_exit);
        open = true;
      }
    } else {
      open = false;
    }

    if (t_next[axis] >= t_max) break;
    t_cur = t_next[axis];
    cell[axis] += step_dir[axis];
    t_next[axis] += t_delta[axis];
  }

  // Drop zero-length spans that can appear at exact boundary grazes.
  std::erase_if(out.spans,
                [](const auto& s) { return !(s.second > s.first); });
  return out;
}

std::vector<double> sample_intervals(const RayIntervals& intervals,
                                     double step, int max_samples) {
  if (!(step > 0)) throw std::invalid_argument("sample_intervals: step <= 0");
  std::vector<double> depths;
  for (const auto& [t0, t1] : intervals.spans) {
    for (int k = 0;; ++k) {
      const double t = t0 + (k + 0.5) * step;
      if (t >= t1) break;
      if (static_cast<int>(depths.size()) >= max_samples) return depths;
      depths.push_back(t);
    }
  }
  return depths;
}

std::vector<TaggedDepth> merge_sorted(const std::vector<double>& dense,
                                      const std::vector<double>& sparse) {
  std::vector<TaggedDepth> out;
  out.reserve(dense.size() + sparse.size());
  size_t i = 0, j = 0;
  while (i < dense.size() || j < sparse.size()) {
    const bool take_dense =
        j >= sparse.size() || (i < dense.size() && dense[i] <= sparse[j]);
    if (take_dense)
      out.push_back({dense[i++], Level::Dense});
    else
      out.push_back({sparse[j++], Level::Sparse});
  }
  return out;
}

double render_weight(double sdf, double trunc) {
  const double a = sdf / trunc;
  return logistic(a) * logistic(-a);
}

RayRender render_ray(std::vector<RaySample>& samples, double trunc,
                     double hit_eps) {
  // Truncate contributions more than trunc behind the first zero crossing.
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i].sdf > 0 && samples[i + 1].sdf <= 0) {
      const double s0 = samples[i].sdf, s1 = samples[i + 1].sdf;
      const double frac = s0 / (s0 - s1);
      const double t_cross =
          samples[i].t + frac * (samples[i + 1].t - samples[i].t);
      for (size_t k = i + 1; k < samples.size(); ++k)
        if (samples[k].t > t_cross + trunc) samples[k].active = false;
      break;
    }
  }

  RayRender r;
  double depth_acc = 0;
  Eigen::Vector3d color_acc = Eigen::Vector3d::Zero();
  for (auto& s : samples) {
    if (!s.active) continue;
    s.weight = render_weight(s.sdf, trunc);
    r.weight_sum += s.weight;
    depth_acc += s.weight * s.depth;
    color_acc += s.weight * s.rgb;
  }
  r.hit = r.weight_sum > hit_eps;
  if (r.hit) {
    r.depth = depth_acc / r.weight_sum;
    r.color = color_acc / r.weight_sum;
  }
  return r;
}

RayRender render_field_ray(const Ray& ray, const VoxelStore& store,
                           const VertexBank& bank, const Decoder& decoder,
                           const RenderConfig& cfg) {
  const auto dense_iv = traverse(ray, store, Level::Dense, cfg.t_min, cfg.t_max);
  const auto sparse_iv =
      traverse(ray, store, Level::Sparse, cfg.t_min, cfg.t_max);
  const auto dense_t =
      sample_intervals(dense_iv, cfg.step, cfg.max_samples_per_ray);
  const auto sparse_t =
      sample_intervals(sparse_iv, cfg.step, cfg.max_samples_per_ray);
  auto merged = merge_sorted(dense_t, sparse_t);
  if (merged.size() > static_cast<size_t>(cfg.max_samples_per_ray))
    merged.resize(cfg.max_samples_per_ray);

  std::vector<RaySample> samples;
  samples.reserve(merged.size());
  for (const auto& td : merged) {
    const Vec3 x = ray.origin + td.t * ray.direction;
    const VoxelRecord* rec =
        store.find(voxel_key(x, store.edge_len(td.level), td.level));
    if (!rec) continue;  // numeric graze of an interval boundary

    RaySample s;
    s.t = td.t;
    s.depth = td.t;
    s.level = td.level;
    const TriWeights tw = trilinear_weights(
        x, store.voxel_min(rec->key), store.edge_len(td.level));
    double sdf_raw = 0;
    Eigen::VectorXd feat = Eigen::VectorXd::Zero(bank.feat_dim);
    for (int c = 0; c < 8; ++c) {
      sdf_raw += tw.w[c] * bank.sdf_at(td.level, rec->vertex_ids[c]);
      const double* f = bank.feat_at(td.level, rec->vertex_ids[c]);
      for (int k = 0; k < bank.feat_dim; ++k) feat[k] += tw.w[c] * f[k];
    }
    s.sdf = cfg.sdf_activation ? activate_sdf(sdf_raw) : sdf_raw;
    s.rgb = decoder.forward(feat);
    samples.push_back(s);
  }
  return render_ray(samples, cfg.trunc, cfg.hit_eps);
}

}  // namespace neuv

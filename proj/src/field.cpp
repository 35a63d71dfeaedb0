#include "neuv/field.hpp"

#include <cmath>
#include <stdexcept>

namespace neuv {

void VertexBank::sync(const VoxelStore& store, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> feat_init(-0.01, 0.01);
  for (int l = 0; l < kNumLevels; ++l) {
    const uint64_t target = store.vertex_count(static_cast<Level>(l));
    const uint64_t old = sdf_raw[l].size();
    if (target <= old) continue;
    sdf_raw[l].resize(target, 0.1);
    feat[l].resize(target * feat_dim);
    for (uint64_t i = old * feat_dim; i < target * feat_dim; ++i)
      feat[l][i] = feat_init(rng);
  }
}

TriWeights trilinear_weights(const Vec3& x, const Vec3& cube_min, double edge) {
  const Vec3 u = (x - cube_min) / edge;
  TriWeights tw;
  for (int c = 0; c < 8; ++c) {
    const double fx = (c & 1) ? u.x() : 1.0 - u.x();
    const double fy = (c & 2) ? u.y() : 1.0 - u.y();
    const double fz = (c & 4) ? u.z() : 1.0 - u.z();
    const double sx = (c & 1) ? 1.0 : -1.0;
    const double sy = (c & 2) ? 1.0 : -1.0;
    const double sz = (c & 4) ? 1.0 : -1.0;
    tw.w[c] = fx * fy * fz;
    tw.dw_dx[c] = Vec3(sx * fy * fz, fx * sy * fz, fx * fy * sz) / edge;
  }
  return tw;
}

namespace {

TriWeights checked_weights(const Vec3& x, const VoxelRecord& rec,
                           const VoxelStore& store) {
  const double edge = store.edge_len(rec.key.level);
  const Vec3 vmin = store.voxel_min(rec.key);
  const Vec3 u = (x - vmin) / edge;
  for (int a = 0; a < 3; ++a)
    if (u[a] < -1e-9 / edge || u[a] > 1.0 + 1e-9 / edge)
      throw std::logic_error("trilinear: point outside voxel cube");
  return trilinear_weights(x, vmin, edge);
}

}  // namespace

double trilinear_sdf(const Vec3& x, const VoxelRecord& rec,
                     const VoxelStore& store, const VertexBank& bank) {
  const TriWeights tw = checked_weights(x, rec, store);
  double v = 0;
  for (int c = 0; c < 8; ++c)
    v += tw.w[c] * bank.sdf_at(rec.key.level, rec.vertex_ids[c]);
  return v;
}

Eigen::VectorXd trilinear_feat(const Vec3& x, const VoxelRecord& rec,
                               const VoxelStore& store,
                               const VertexBank& bank) {
  const TriWeights tw = checked_weights(x, rec, store);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(bank.feat_dim);
  for (int c = 0; c < 8; ++c) {
    const double* f = bank.feat_at(rec.key.level, rec.vertex_ids[c]);
    for (int k = 0; k < bank.feat_dim; ++k) v[k] += tw.w[c] * f[k];
  }
  return v;
}

std::optional<FieldSample> sample_field(const Vec3& x, const VoxelStore& store,
                                        const VertexBank& bank) {
  const auto hit = store.locate(x);
  if (!hit) return std::nullopt;
  const auto [rec, level] = *hit;

  FieldSample s;
  s.x = x;
  s.level = level;
  s.record = rec;
  s.weights = trilinear_weights(x, store.voxel_min(rec->key),
                                store.edge_len(level));
  s.color_feat = Eigen::VectorXd::Zero(bank.feat_dim);
  for (int c = 0; c < 8; ++c) {
    s.sdf_raw += s.weights.w[c] * bank.sdf_at(level, rec->vertex_ids[c]);
    const double* f = bank.feat_at(level, rec->vertex_ids[c]);
    for (int k = 0; k < bank.feat_dim; ++k)
      s.color_feat[k] += s.weights.w[c] * f[k];
  }
  s.sdf = activate_sdf(s.sdf_raw);
  return s;
}

Decoder::Decoder(int feat_dim, int hidden) : feat_dim_(feat_dim), hidden_(hidden) {
  w1 = Eigen::MatrixXd::Zero(hidden_, feat_dim_);
  w2 = Eigen::MatrixXd::Zero(hidden_, hidden_);
  w3 = Eigen::MatrixXd::Zero(3, hidden_);
  b1 = Eigen::VectorXd::Zero(hidden_);
  b2 = Eigen::VectorXd::Zero(hidden_);
  b3 = Eigen::VectorXd::Zero(3);
}

void Decoder::init(std::mt19937_64& rng) {
  auto fill = [&rng](Eigen::MatrixXd& m, int fan_in) {
    std::uniform_real_distribution<double> dist(-1.0 / std::sqrt(fan_in),
                                                1.0 / std::sqrt(fan_in));
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  };
  fill(w1, feat_dim_);
  fill(w2, hidden_);
  fill(w3, hidden_);
  b1.setZero();
  b2.setZero();
  b3.setZero();
}

Eigen::Vector3d Decoder::forward(const Eigen::VectorXd& feat) const {
  Cache c;
  return forward(feat, c);
}

Eigen::Vector3d Decoder::forward(const Eigen::VectorXd& feat,
                                 Cache& cache) const {
  cache.input = feat;
  cache.h1 = (w1 * feat + b1).cwiseMax(0.0);
  cache.h2 = (w2 * cache.h1 + b2).cwiseMax(0.0);
  const Eigen::Vector3d z = w3 * cache.h2 + b3;
  for (int i = 0; i < 3; ++i) cache.out[i] = logistic(z[i]);
  return cache.out;
}

void Decoder::Grad::setZero(const Decoder& d) {
  w1 = Eigen::MatrixXd::Zero(d.w1.rows(), d.w1.cols());
  w2 = Eigen::MatrixXd::Zero(d.w2.rows(), d.w2.cols());
  w3 = Eigen::MatrixXd::Zero(d.w3.rows(), d.w3.cols());
  b1 = Eigen::VectorXd::Zero(d.b1.size());
  b2 = Eigen::VectorXd::Zero(d.b2.size());
  b3 = Eigen::VectorXd::Zero(d.b3.size());
}

void Decoder::Grad::accumulate(const Grad& o) {
  w1 += o.w1;
  w2 += o.w2;
  w3 += o.w3;
  b1 += o.b1;
  b2 += o.b2;
  b3 += o.b3;
}

Eigen::VectorXd Decoder::backward(const Cache& cache,
                                  const Eigen::Vector3d& dout,
                                  Grad& grad) const {
  Eigen::Vector3d dz3;
  for (int i = 0; i < 3; ++i)
    dz3[i] = dout[i] * cache.out[i] * (1.0 - cache.out[i]);
  grad.w3 += dz3 * cache.h2.transpose();
  grad.b3 += dz3;

  Eigen::VectorXd dh2 = w3.transpose() * dz3;
  for (Eigen::Index i = 0; i < dh2.size(); ++i)
    if (cache.h2[i] <= 0.0) dh2[i] = 0.0;
  grad.w2 += dh2 * cache.h1.transpose();
  grad.b2 += dh2;

  Eigen::VectorXd dh1 = w2.transpose() * dh2;
  for (Eigen::Index i = 0; i < dh1.size(); ++i)
    if (cache.h1[i] <= 0.0) dh1[i] = 0.0;
  grad.w1 += dh1 * cache.input.transpose();
  grad.b1 += dh1;

  return w1.transpose() * dh1;
}

size_t Decoder::param_count() const {
  return w1.size() + w2.size() + w3.size() + b1.size() + b2.size() + b3.size();
}

void Decoder::flatten(std::vector<double>& out) const {
  out.clear();
  out.reserve(param_count());
  for (const auto* m : {&w1, &w2, &w3})
    out.insert(out.end(), m->data(), m->data() + m->size());
  for (const auto* v : {&b1, &b2, &b3})
    out.insert(out.end(), v->data(), v->data() + v->size());
}

void Decoder::unflatten(const std::vector<double>& in) {
  if (in.size() != param_count())
    throw std::invalid_argument("decoder: parameter count mismatch");
  size_t off = 0;
  for (auto* m : {&w1, &w2, &w3}) {
    std::copy(in.begin() + off, in.begin() + off + m->size(), m->data());
    off += m->size();
  }
  for (auto* v : {&b1, &b2, &b3}) {
    std::copy(in.begin() + off, in.begin() + off + v->size(), v->data());
    off += v->size();
  }
}

void Decoder::flatten_grad(const Grad& g, std::vector<double>& out) {
  out.clear();
  for (const auto* m : {&g.w1, &g.w2, &g.w3})
    out.insert(out.end(), m->data(), m->data() + m->size());
  for (const auto* v : {&g.b1, &g.b2, &g.b3})
    out.insert(out.end(), v->data(), v->data() + v->size());
}

}  // namespace neuv

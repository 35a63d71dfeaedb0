// VDF scene representation: raw SDF scalars and color feature vectors
// anchored at voxel vertices, trilinear interpolation with tanh applied
// after interpolation, and a 3-layer color decoder. All forward paths
// have hand-derived reverse-mode gradients.
#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <random>
#include <vector>

#include "neuv/hashmv.hpp"

namespace neuv {

enum class FieldChannel { Sdf, Color };

// Per-vertex learnable state, one section per voxel level.
struct VertexBank {
  int feat_dim = 8;  // A
  std::array<std::vector<double>, kNumLevels> sdf_raw;
  std::array<std::vector<double>, kNumLevels> feat;  // feat_dim per vertex

  // Grows the arrays to match the store's vertex numbering. New vertices
  // start slightly "outside" (sdf +0.1) so fresh voxels render empty.
  void sync(const VoxelStore& store, std::mt19937_64& rng);

  uint64_t count(Level l) const { return sdf_raw[level_index(l)].size(); }
  double sdf_at(Level l, uint64_t id) const { return sdf_raw[level_index(l)][id]; }
  const double* feat_at(Level l, uint64_t id) const {
    return &feat[level_index(l)][id * feat_dim];
  }
};

// Trilinear blend weights and their spatial derivative at x.
struct TriWeights {
  std::array<double, 8> w{};
  std::array<Vec3, 8> dw_dx{};  // world-units derivative of each weight
};

// Unchecked weight computation; smooth extrapolation outside the cube.
TriWeights trilinear_weights(const Vec3& x, const Vec3& cube_min, double edge);

// Checked interpolation over one voxel; throws if x is outside the cube by
// more than 1e-9 (containment is the caller's job).
double trilinear_sdf(const Vec3& x, const VoxelRecord& rec,
                     const VoxelStore& store, const VertexBank& bank);
Eigen::VectorXd trilinear_feat(const Vec3& x, const VoxelRecord& rec,
                               const VoxelStore& store, const VertexBank& bank);

inline double activate_sdf(double sdf_raw) { return std::tanh(sdf_raw); }
inline double activate_sdf_grad(double sdf_raw) {
  const double t = std::tanh(sdf_raw);
  return 1.0 - t * t;
}

struct FieldSample {
  Vec3 x;
  Level level = Level::Sparse;
  const VoxelRecord* record = nullptr;
  double sdf_raw = 0.0;             // s-hat
  double sdf = 0.0;                 // tanh(s-hat)
  Eigen::VectorXd color_feat;       // c-hat, A entries
  Eigen::Vector3d rgb;              // decoded color in [0,1]
  TriWeights weights;
};

// Dense-priority field query; nullopt outside all voxels. rgb is left unset.
std::optional<FieldSample> sample_field(const Vec3& x, const VoxelStore& store,
                                        const VertexBank& bank);

// 3 fully connected layers, rectifier between, logistic output squash.
class Decoder {
 public:
  Decoder(int feat_dim = 8, int hidden = 32);
  void init(std::mt19937_64& rng);  // fan-in-scaled uniform

  int feat_dim() const { return feat_dim_; }
  int hidden() const { return hidden_; }

  Eigen::Vector3d forward(const Eigen::VectorXd& feat) const;

  struct Cache {
    Eigen::VectorXd input, h1, h2;  // post-activation hidden states
    Eigen::Vector3d out;
  };
  Eigen::Vector3d forward(const Eigen::VectorXd& feat, Cache& cache) const;

  struct Grad {
    Eigen::MatrixXd w1, w2, w3;
    Eigen::VectorXd b1, b2, b3;
    void setZero(const Decoder& d);
    void accumulate(const Grad& other);
  };
  // Accumulates parameter gradients; returns dL/d(input feature).
  Eigen::VectorXd backward(const Cache& cache, const Eigen::Vector3d& dout,
                           Grad& grad) const;

  // Flat parameter access for the optimizer and checkpointing.
  size_t param_count() const;
  void flatten(std::vector<double>& out) const;
  void unflatten(const std::vector<double>& in);
  static void flatten_grad(const Grad& g, std::vector<double>& out);

  Eigen::MatrixXd w1, w2, w3;
  Eigen::VectorXd b1, b2, b3;

 private:
  int feat_dim_, hidden_;
};

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace neuv

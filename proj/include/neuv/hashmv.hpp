// Hash-managed two-resolution voxel store with shared vertex numbering.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "neuv/geometry.hpp"

namespace neuv {

enum class Level : uint8_t { Sparse = 0, Dense = 1 };
inline constexpr int kNumLevels = 2;
inline int level_index(Level l) { return static_cast<int>(l); }

struct VoxelKey {
  int64_t ix = 0, iy = 0, iz = 0;
  Level level = Level::Sparse;

  bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
  size_t operator()(const VoxelKey& k) const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
      h ^= x;
      h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(k.ix));
    mix(static_cast<uint64_t>(k.iy));
    mix(static_cast<uint64_t>(k.iz));
    mix(static_cast<uint64_t>(k.level));
    return static_cast<size_t>(h);
  }
};

// Corner c has lattice offsets (c&1, (c>>1)&1, (c>>2)&1) in x, y, z.
struct VoxelRecord {
  VoxelKey key;
  std::array<uint64_t, 8> vertex_ids{};  // level-scoped ids
};

struct AllocationStats {
  int64_t new_sparse = 0;
  int64_t new_dense = 0;
  int64_t discarded = 0;
};

// Eq.-1 lattice quantization: componentwise floor(p / edge_len).
VoxelKey voxel_key(const Vec3& p, double edge_len, Level level);

class VoxelStore {
 public:
  explicit VoxelStore(double sparse_edge_len = 0.2);

  double edge_len(Level l) const {
    return l == Level::Sparse ? sparse_edge_ : dense_edge_;
  }
  double sparse_edge_len() const { return sparse_edge_; }
  double dense_edge_len() const { return dense_edge_; }

  // First-come-first-served allocation, edge points processed first.
  // Points whose dense or sparse cell is already occupied are discarded.
  AllocationStats insert_points(
      const std::vector<std::pair<Vec3, bool>>& points);

  const VoxelRecord* find(const VoxelKey& key) const;
  std::vector<const VoxelRecord*> neighbor_voxels(const VoxelKey& key) const;

  // Dense-priority containment query.
  std::optional<std::pair<const VoxelRecord*, Level>> locate(
      const Vec3& x) const;
  // Same-level containment with boundary slack (closed cubes).
  const VoxelRecord* locate_in_level(const Vec3& x, Level level,
                                     double eps = 1e-9) const;

  Vec3 corner_position(const VoxelKey& key, int corner) const;
  Vec3 voxel_min(const VoxelKey& key) const;

  uint64_t vertex_count(Level l) const { return vertex_counts_[level_index(l)]; }
  size_t voxel_count() const { return voxels_.size(); }
  size_t voxel_count(Level l) const;

  const std::unordered_map<VoxelKey, VoxelRecord, VoxelKeyHash>& voxels()
      const {
    return voxels_;
  }

  // One voxel per line: "level ix iy iz v0..v7", keys sorted; golden tests.
  std::string debug_dump() const;

  // Re-inserts an explicit voxel record (checkpoint restore). Vertex ids must
  // come from the same numbering that produced vertex_count().
  void restore_voxel(const VoxelRecord& rec, uint64_t vertex_count_hint);

 private:
  uint64_t vertex_id_for_corner(const VoxelKey& key, int corner);
  VoxelRecord& allocate(const VoxelKey& key);

  double sparse_edge_;
  double dense_edge_;
  std::unordered_map<VoxelKey, VoxelRecord, VoxelKeyHash> voxels_;
  // Vertex lattice position -> shared id, per level (level kept in key).
  std::unordered_map<VoxelKey, uint64_t, VoxelKeyHash> vertex_ids_;
  std::array<uint64_t, kNumLevels> vertex_counts_{};
};

}  // namespace neuv

#include "neuv/hashmv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace neuv {

VoxelKey voxel_key(const Vec3& p, double edge_len, Level level) {
  if (!(edge_len > 0)) throw std::invalid_argument("voxel_key: edge_len <= 0");
  return {static_cast<int64_t>(std::floor(p.x() / edge_len)),
          static_cast<int64_t>(std::floor(p.y() / edge_len)),
          static_cast<int64_t>(std::floor(p.z() / edge_len)), level};
}

VoxelStore::VoxelStore(double sparse_edge_len)
    : sparse_edge_(sparse_edge_len), dense_edge_(sparse_edge_len / 2.0) {
  if (!(sparse_edge_ > 0))
    throw std::invalid_argument("VoxelStore: edge length must be > 0");
}

Vec3 VoxelStore::voxel_min(const VoxelKey& key) const {
  const double e = edge_len(key.level);
  return {key.ix * e, key.iy * e, key.iz * e};
}

Vec3 VoxelStore::corner_position(const VoxelKey& key, int corner) const {
  const double e = edge_len(key.level);
  return {(key.ix + (corner & 1)) * e, (key.iy + ((corner >> 1) & 1)) * e,
          (key.iz + ((corner >> 2) & 1)) * e};
}

uint64_t VoxelStore::vertex_id_for_corner(const VoxelKey& key, int corner) {
  const VoxelKey vkey{key.ix + (corner & 1), key.iy + ((corner >> 1) & 1),
                      key.iz + ((corner >> 2) & 1), key.level};
  auto it = vertex_ids_.find(vkey);
  if (it != vertex_ids_.end()) return it->second;
  const uint64_t id = vertex_counts_[level_index(key.level)]++;
  vertex_ids_.emplace(vkey, id);
  return id;
}

VoxelRecord& VoxelStore::allocate(const VoxelKey& key) {
  VoxelRecord rec;
  rec.key = key;
  // Shared ids resolve against already-numbered neighbors first; fresh
  // corners are numbered in the fixed corner sequence.
  for (int c = 0; c < 8; ++c) rec.vertex_ids[c] = vertex_id_for_corner(key, c);
  return voxels_.emplace(key, rec).first->second;
}

AllocationStats VoxelStore::insert_points(
    const std::vector<std::pair<Vec3, bool>>& points) {
  // Stable edge-first partition: edge points claim space before sparse ones.
  std::vector<const std::pair<Vec3, bool>*> ordered;
  ordered.reserve(points.size());
  for (const auto& p : points)
    if (p.second) ordered.push_back(&p);
  for (const auto& p : points)
    if (!p.second) ordered.push_back(&p);

  AllocationStats stats;
  for (const auto* entry : ordered) {
    const Vec3& p = entry->first;
    const VoxelKey dense_key = voxel_key(p, dense_edge_, Level::Dense);
    const VoxelKey sparse_key = voxel_key(p, sparse_edge_, Level::Sparse);
    if (voxels_.count(dense_key) || voxels_.count(sparse_key)) {
      ++stats.discarded;
      continue;
    }
    if (entry->second) {
      allocate(dense_key);
      ++stats.new_dense;
    } else {
      allocate(sparse_key);
      ++stats.new_sparse;
    }
  }
  return stats;
}

const VoxelRecord* VoxelStore::find(const VoxelKey& key) const {
  auto it = voxels_.find(key);
  return it == voxels_.end() ? nullptr : &it->second;
}

std::vector<const VoxelRecord*> VoxelStore::neighbor_voxels(
    const VoxelKey& key) const {
  std::vector<const VoxelRecord*> out;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        if (const VoxelRecord* r =
                find({key.ix + dx, key.iy + dy, key.iz + dz, key.level}))
          out.push_back(r);
      }
  return out;
}

std::optional<std::pair<const VoxelRecord*, Level>> VoxelStore::locate(
    const Vec3& x) const {
  if (const VoxelRecord* r = find(voxel_key(x, dense_edge_, Level::Dense)))
    return std::make_pair(r, Level::Dense);
  if (const VoxelRecord* r = find(voxel_key(x, sparse_edge_, Level::Sparse)))
    return std::make_pair(r, Level::Sparse);
  return std::nullopt;
}

const VoxelRecord* VoxelStore::locate_in_level(const Vec3& x, Level level,
                                               double eps) const {
  const double e = edge_len(level);
  const VoxelKey lo = voxel_key(x - Vec3::Constant(eps), e, level);
  const VoxelKey hi = voxel_key(x + Vec3::Constant(eps), e, level);
  for (int64_t iz = lo.iz; iz <= hi.iz; ++iz)
    for (int64_t iy = lo.iy; iy <= hi.iy; ++iy)
      for (int64_t ix = lo.ix; ix <= hi.ix; ++ix)
        if (const VoxelRecord* r = find({ix, iy, iz, level})) return r;
  return nullptr;
}

size_t VoxelStore::voxel_count(Level l) const {
  size_t n = 0;
  for (const auto& [k, _] : voxels_)
    if (k.level == l) ++n;
  return n;
}

std::string VoxelStore::debug_dump() const {
  std::vector<const VoxelRecord*> recs;
  recs.reserve(voxels_.size());
  for (const auto& [_, rec] : voxels_) recs.push_back(&rec);
  std::sort(recs.begin(), recs.end(), [](const auto* a, const auto* b) {
    const auto ta = std::make_tuple(level_index(a->key.level), a->key.ix,
                                    a->key.iy, a->key.iz);
    const auto tb = std::make_tuple(level_index(b->key.level), b->key.ix,
                                    b->key.iy, b->key.iz);
    return ta < tb;
  });
  std::ostringstream os;
  for (const auto* r : recs) {
    os << (r->key.level == Level::Sparse ? "S" : "D") << " " << r->key.ix
       << " " << r->key.iy << " " << r->key.iz;
    for (uint64_t id : r->vertex_ids) os << " " << id;
    os << "\n";
  }
  return os.str();
}

void VoxelStore::restore_voxel(const VoxelRecord& rec,
                               uint64_t vertex_count_hint) {
  voxels_[rec.key] = rec;
  for (int c = 0; c < 8; ++c) {
    const VoxelKey vkey{rec.key.ix + (c & 1), rec.key.iy + ((c >> 1) & 1),
                        rec.key.iz + ((c >> 2) & 1), rec.key.level};
    vertex_ids_[vkey] = rec.vertex_ids[c];
  }
  auto& count = vertex_counts_[level_index(rec.key.level)];
  count = std::max(count, vertex_count_hint);
}

}  // namespace neuv

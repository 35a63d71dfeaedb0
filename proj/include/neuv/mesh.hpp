// Mesh extraction: per-level SDF grid sampling, marching cubes, and
// merging of the sparse- and dense-level surfaces.
#pragma once

#include <vector>

#include "neuv/field.hpp"
#include "neuv/hashmv.hpp"

namespace neuv {

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<uint32_t, 3>> faces;

  bool empty() const { return faces.empty(); }
};

struct SdfGrid {
  Vec3 origin = Vec3::Zero();
  double cell = 0.0;
  int dims[3] = {0, 0, 0};  // node counts per axis
  std::vector<double> values;
  std::vector<uint8_t> occupied;

  size_t index(int i, int j, int k) const {
    return (static_cast<size_t>(k) * dims[1] + j) * dims[0] + i;
  }
  bool empty() const { return values.empty(); }
};

// Lattice over the level's allocated AABB; nodes outside the level's
// voxels are flagged unoccupied. Activated SDF at each occupied node.
// When exclude_dense_overlap is set (sparse pass of extract_mesh), nodes
// inside sparse voxels overlapped by any dense voxel count as unoccupied.
SdfGrid sample_sdf_grid(const VoxelStore& store, const VertexBank& bank,
                        Level level, double cell,
                        bool exclude_dense_overlap = false,
                        bool sdf_activation = true);

// Standard 256-case marching cubes on fully occupied cells; normals point
// toward positive SDF.
TriMesh marching_cubes(const SdfGrid& grid, double iso = 0.0);

// Dense pass at dense_edge/2, sparse pass at sparse_edge/2 excluding
// dense-overlapped sparse voxels; results concatenated and welded.
TriMesh extract_mesh(const VoxelStore& store, const VertexBank& bank,
                     bool sdf_activation = true);

// Merges vertices closer than tol and drops degenerate faces.
TriMesh weld_mesh(const TriMesh& mesh, double tol = 1e-6);

}  // namespace neuv

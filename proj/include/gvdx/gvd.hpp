#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gvdx/grid.hpp"

namespace gvdx {

inline constexpr double kSqrt2 = std::numbers::sqrt2;

// Fixed 3x3 kernels of the mapping model: the distance offset matrix applied
// inside each pooling window, the Laplacian used for ridge extraction, and
// the identity the offset composes with.
struct GvdKernels {
  static constexpr std::array<std::array<double, 3>, 3> offset{{
      {-kSqrt2, -1.0, -kSqrt2},
      {-1.0, 0.0, -1.0},
      {-kSqrt2, -1.0, -kSqrt2},
  }};
  static constexpr std::array<std::array<double, 3>, 3> laplacian{{
      {0.0, 1.0, 0.0},
      {1.0, -4.0, 1.0},
      {0.0, 1.0, 0.0},
  }};
  static constexpr std::array<std::array<double, 3>, 3> identity{{
      {1.0, 0.0, 0.0},
      {0.0, 1.0, 0.0},
      {0.0, 0.0, 1.0},
  }};
};

// Per-cell field over the map. During pooling the values are the internal
// offset-pool field D (sentinel on obstacles, growing toward sentinel-chamfer
// on free cells); build_distance_map returns it holding the clearance: the
// chamfer-(1,sqrt2) distance to the nearest obstacle, in cells, zero on
// obstacle cells, capped at the sentinel.
struct DistanceMap {
  int width = 0;
  int height = 0;
  double sentinel = 0.0;  // initial obstacle value K = L_max
  std::vector<double> values;

  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * width + col;
  }
  double at(int col, int row) const { return values[index(col, row)]; }
  double& at(int col, int row) { return values[index(col, row)]; }
  double clearance(int col, int row) const { return at(col, row); }
};

struct DistanceBuildStats {
  int passes_changed = 0;  // pooling passes that modified at least one cell
  bool converged = false;  // fixpoint observed before the pass cap
};

/// Upper bound on pooling passes: ceil(L_max / 2) with L_max = max(w, h).
int pooling_iterations(const BinaryImage& binary);

/// One 3x3 offset max-pooling pass, stride 1: D'(p) = max over in-bounds
/// window cells q of D(q) + offset(q - p).
DistanceMap distance_offset_pool(const DistanceMap& dmap);

/// Builds the clearance field: D initialized to K = L_max on obstacle bits
/// and 0 on free bits, pooled to fixpoint (at most pooling_iterations
/// passes), then mapped to clearance = K - D. Equals the chamfer-(1,sqrt2)
/// distance transform wherever that distance is below K.
/// Throws if the image has no obstacle bit.
DistanceMap build_distance_map(const BinaryImage& binary,
                               DistanceBuildStats* stats = nullptr);

/// Laplacian of the clearance field with zero padding; obstacle cells
/// (clearance 0) carry response 0.
std::vector<double> laplacian_response(const DistanceMap& dmap);

struct GvdNode {
  Cell cell;
  double radius_m = 0.0;  // clearance * resolution
};

// Ridge graph: nodes are Free cells whose Laplacian response is at or below
// the ridge threshold, edges join 8-adjacent nodes. Node order is row-major
// and adjacency lists are sorted, so identical inputs give identical graphs.
struct GvdGraph {
  int width = 0;
  int height = 0;
  double resolution = 0.1;
  std::vector<GvdNode> nodes;
  std::vector<std::vector<std::pair<int, bool>>> adj;  // (node index, diagonal?)
  std::vector<int> component;
  std::vector<int> cell_node;  // width*height, node index or -1

  int node_at(int col, int row) const {
    return cell_node[static_cast<std::size_t>(row) * width + col];
  }
  double edge_weight(bool diagonal) const {
    return (diagonal ? kSqrt2 : 1.0) * resolution;
  }
  std::size_t edge_count() const;
};

/// Extracts the ridge graph. Nodes: Free cells with response <= ridge_tau
/// and clearance * resolution >= r_min_m. An empty node set yields an empty
/// graph (not an error).
GvdGraph extract_gvd(const DistanceMap& dmap, const OccupancyGrid& grid,
                     double ridge_tau, double r_min_m);

/// Clearance field as a scaled 8-bit PGM (white = far from obstacles).
void dump_clearance_pgm(const DistanceMap& dmap, const std::string& path);
/// Ridge mask as a PGM (ridge cells white).
void dump_ridges_pgm(const GvdGraph& graph, const std::string& path);
/// Edge list: `(col,row,radius_m) -- (col,row,radius_m) weight_m` per line.
void dump_graph_edges(const GvdGraph& graph, const std::string& path);

// Serial reference kernels. Semantically identical to the parallel versions
// above (bit-for-bit); kept for tests and the kernel benchmark.
namespace serial {
DistanceMap distance_offset_pool(const DistanceMap& dmap);
DistanceMap build_distance_map(const BinaryImage& binary,
                               DistanceBuildStats* stats = nullptr);
std::vector<double> laplacian_response(const DistanceMap& dmap);
}  // namespace serial

}  // namespace gvdx

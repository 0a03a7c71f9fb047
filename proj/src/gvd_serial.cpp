// Serial reference implementations of the distance-map kernels. These are
// the plain-loop twins of the OpenMP versions in gvd.cpp; tests require the
// two to agree bit-for-bit and kernel_bench compares their运行 timings.

#include <stdexcept>

#include "chamfer_lattice.hpp"
#include "gvdx/gvd.hpp"

namespace gvdx::serial {

DistanceMap distance_offset_pool(const DistanceMap& dmap) {
  DistanceMap out = dmap;
  const int w = dmap.width;
  const int h = dmap.height;
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      double best = dmap.at(col, row);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dc == 0 && dr == 0) continue;
          const int c = col + dc;
          const int r = row + dr;
          if (c < 0 || c >= w || r < 0 || r >= h) continue;
          const double v = dmap.at(c, r) + GvdKernels::offset[dr + 1][dc + 1];
          if (v > best) best = v;
        }
      }
      out.at(col, row) = best;
    }
  }
  return out;
}

DistanceMap build_distance_map(const BinaryImage& binary,
                               DistanceBuildStats* stats) {
  if (binary.width < 1 || binary.height < 1)
    throw std::invalid_argument("empty image");
  if (!detail::image_has_obstacle(binary))
    throw std::runtime_error("no obstacle reference");

  const int cap = std::max(binary.width, binary.height);
  const int max_passes = pooling_iterations(binary);
  const int w = binary.width;
  const int h = binary.height;

  std::vector<detail::StepPair> prev = detail::init_lattice(binary, cap);
  std::vector<detail::StepPair> next(prev.size());
  DistanceBuildStats st;
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (int row = 0; row < h; ++row) {
      for (int col = 0; col < w; ++col) {
        const std::size_t idx = static_cast<std::size_t>(row) * w + col;
        next[idx] = detail::relax_cell(prev, w, h, col, row);
        if (!(next[idx] == prev[idx])) changed = true;
      }
    }
    if (!changed) {
      st.converged = true;
      break;
    }
    ++st.passes_changed;
    prev.swap(next);
  }
  if (stats) *stats = st;
  return detail::finalize_lattice(prev, binary, static_cast<double>(cap));
}

std::vector<double> laplacian_response(const DistanceMap& dmap) {
  const int w = dmap.width;
  const int h = dmap.height;
  std::vector<double> response(dmap.values.size(), 0.0);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      if (dmap.at(col, row) == 0.0) continue;
      double r = 0.0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const double k = GvdKernels::laplacian[dr + 1][dc + 1];
          if (k == 0.0) continue;
          const int c = col + dc;
          const int rr = row + dr;
          const double v =
              (c < 0 || c >= w || rr < 0 || rr >= h) ? 0.0 : dmap.at(c, rr);
          r += k * v;
        }
      }
      response[dmap.index(col, row)] = r;
    }
  }
  return response;
}

}  // namespace gvdx::serial

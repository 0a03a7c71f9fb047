#pragma once

// Internal representation shared by the parallel and serial distance-map
// builders. Chamfer distances are carried as (axis, diagonal) step counts
// and materialized as axis + diag * sqrt(2) in one canonical expression, so
// the pooled field is bit-identical to any other exact chamfer evaluation
// regardless of the order passes visit cells in.

#include <cstdint>
#include <vector>

#include "gvdx/gvd.hpp"

namespace gvdx::detail {

struct StepPair {
  std::int32_t axis = 0;
  std::int32_t diag = 0;

  double value() const { return static_cast<double>(axis) + diag * kSqrt2; }
  friend bool operator==(const StepPair& a, const StepPair& b) {
    return a.axis == b.axis && a.diag == b.diag;
  }
};

// Neighbor offsets in row-major order with their step kind.
struct NeighborStep {
  int dc;
  int dr;
  bool diagonal;
};
inline constexpr NeighborStep kNeighbors8[8] = {
    {-1, -1, true}, {0, -1, false}, {1, -1, true},  {-1, 0, false},
    {1, 0, false},  {-1, 1, true},  {0, 1, true},   {1, 1, true},
};

inline std::vector<StepPair> init_lattice(const BinaryImage& binary,
                                          std::int32_t cap) {
  std::vector<StepPair> cells(binary.bits.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i] = binary.bits[i] ? StepPair{0, 0} : StepPair{cap, 0};
  return cells;
}

// One Jacobi relaxation of a single cell against the previous buffer.
inline StepPair relax_cell(const std::vector<StepPair>& prev, int width,
                           int height, int col, int row) {
  const std::size_t idx = static_cast<std::size_t>(row) * width + col;
  StepPair best = prev[idx];
  double best_v = best.value();
  for (const NeighborStep& n : kNeighbors8) {
    const int c = col + n.dc;
    const int r = row + n.dr;
    if (c < 0 || c >= width || r < 0 || r >= height) continue;
    StepPair cand = prev[static_cast<std::size_t>(r) * width + c];
    if (n.diagonal)
      cand.diag += 1;
    else
      cand.axis += 1;
    const double v = cand.value();
    if (v < best_v) {
      best = cand;
      best_v = v;
    }
  }
  return best;
}

inline DistanceMap finalize_lattice(const std::vector<StepPair>& cells,
                                    const BinaryImage& binary, double cap) {
  DistanceMap out;
  out.width = binary.width;
  out.height = binary.height;
  out.sentinel = cap;
  out.values.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    out.values[i] = binary.bits[i] ? 0.0 : cells[i].value();
  return out;
}

inline bool image_has_obstacle(const BinaryImage& binary) {
  for (const auto b : binary.bits)
    if (b) return true;
  return false;
}

}  // namespace gvdx::detail

#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace gvdx {

// Tri-state occupancy value. The integer encodings (0 / 100 / -1) are the
// wire values used by the map formats and must not change.
enum class CellState : std::int8_t {
  Free = 0,
  Occupied = 100,
  Unknown = -1,
};

CellState cell_state_from_int(int v);
inline int cell_state_to_int(CellState s) { return static_cast<int>(s); }

struct Cell {
  int col = 0;
  int row = 0;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.col == b.col && a.row == b.row;
  }
  friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
  // Lexicographic (row, col) order; the tie-break order used everywhere.
  friend bool operator<(const Cell& a, const Cell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  }
};

/// World-frame robot pose; heading normalized to (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

/// Normalizes an angle to (-pi, pi].
double normalize_angle(double a);

struct OccupancyGrid {
  int width = 0;
  int height = 0;
  double resolution = 0.1;  // meters per cell
  double origin_x = 0.0;    // world position of cell (0,0) center
  double origin_y = 0.0;
  bool closed_world = true;  // border cells binarize as obstacle
  std::vector<CellState> cells;  // row-major, cells[row * width + col]

  static OccupancyGrid filled(int width, int height, CellState s,
                              double resolution = 0.1, double origin_x = 0.0,
                              double origin_y = 0.0);

  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width && row >= 0 && row < height;
  }
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * width + col;
  }
  CellState at(int col, int row) const { return cells[index(col, row)]; }
  CellState& at(int col, int row) { return cells[index(col, row)]; }

  Cell world_to_cell(double x, double y) const;
  void cell_center(int col, int row, double& x, double& y) const {
    x = origin_x + col * resolution;
    y = origin_y + row * resolution;
  }
  bool contains_world(double x, double y) const;

  friend bool operator==(const OccupancyGrid& a, const OccupancyGrid& b);
};

// 1 = obstacle or unknown, 0 = free.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  std::uint8_t at(int col, int row) const {
    return bits[static_cast<std::size_t>(row) * width + col];
  }
};

/// Loads a PGM (P2/P5, with optional sidecar config) or ASCII grid map.
/// The sidecar lives next to the map as `<stem>.cfg`.
OccupancyGrid load_map(const std::string& path);

/// Writes PGM (for .pgm paths, with sidecar) or ASCII ('#', '.', '?').
void save_map(const OccupancyGrid& grid, const std::string& path);

BinaryImage binarize(const OccupancyGrid& grid);

/// Odd-sized sub-grid of ~side/resolution cells centered on the cell
/// containing `center`, clamped at the map borders. World coordinates of
/// shared cells are preserved. Throws if `center` is outside the map.
OccupancyGrid local_window(const OccupancyGrid& grid, const Pose& center,
                           double side_m);

/// Map entropy in bits: one bit per Unknown cell, zero for known cells.
double map_entropy(const OccupancyGrid& grid);

}  // namespace gvdx

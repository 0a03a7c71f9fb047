#include "gvdx/gvd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

#include "chamfer_lattice.hpp"

namespace gvdx {

int pooling_iterations(const BinaryImage& binary) {
  if (binary.width < 1 || binary.height < 1)
    throw std::invalid_argument("empty image");
  const int l_max = std::max(binary.width, binary.height);
  return (l_max + 1) / 2;
}

DistanceMap distance_offset_pool(const DistanceMap& dmap) {
  DistanceMap out = dmap;
  const int w = dmap.width;
  const int h = dmap.height;
#pragma omp parallel for schedule(static)
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      double best = dmap.at(col, row);  // center offset is 0
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dc == 0 && dr == 0) continue;
          const int c = col + dc;
          const int r = row + dr;
          if (c < 0 || c >= w || r < 0 || r >= h) continue;
          const double v =
              dmap.at(c, r) + GvdKernels::offset[dr + 1][dc + 1];
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
#pragma omp parallel for schedule(static) reduction(|| : changed)
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
#pragma omp parallel for schedule(static)
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      if (dmap.at(col, row) == 0.0) continue;  // obstacle cells stay 0
      double r = 0.0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const double k = GvdKernels::laplacian[dr + 1][dc + 1];
          if (k == 0.0) continue;
          const int c = col + dc;
          const int rr = row + dr;
          const double v = (c < 0 || c >= w || rr < 0 || rr >= h)
                               ? 0.0
                               : dmap.at(c, rr);
          r += k * v;
        }
      }
      response[dmap.index(col, row)] = r;
    }
  }
  return response;
}

std::size_t GvdGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& a : adj) n += a.size();
  return n / 2;
}

GvdGraph extract_gvd(const DistanceMap& dmap, const OccupancyGrid& grid,
                     double ridge_tau, double r_min_m) {
  if (dmap.width != grid.width || dmap.height != grid.height)
    throw std::invalid_argument("distance map does not match grid");
  const std::vector<double> response = laplacian_response(dmap);

  GvdGraph g;
  g.width = grid.width;
  g.height = grid.height;
  g.resolution = grid.resolution;
  g.cell_node.assign(dmap.values.size(), -1);
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      const std::size_t idx = dmap.index(col, row);
      if (grid.cells[idx] != CellState::Free) continue;
      const double clearance = dmap.values[idx];
      if (clearance <= 0.0) continue;
      if (response[idx] > ridge_tau) continue;
      const double radius = clearance * grid.resolution;
      if (radius < r_min_m) continue;
      g.cell_node[idx] = static_cast<int>(g.nodes.size());
      g.nodes.push_back(GvdNode{Cell{col, row}, radius});
    }
  }

  g.adj.resize(g.nodes.size());
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
    const Cell c = g.nodes[i].cell;
    for (const detail::NeighborStep& n : detail::kNeighbors8) {
      const int cc = c.col + n.dc;
      const int rr = c.row + n.dr;
      if (cc < 0 || cc >= g.width || rr < 0 || rr >= g.height) continue;
      const int j = g.node_at(cc, rr);
      if (j >= 0) g.adj[i].emplace_back(j, n.diagonal);
    }
  }

  // connected components, BFS in node order
  g.component.assign(g.nodes.size(), -1);
  int comp = 0;
  std::deque<int> queue;
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
    if (g.component[i] >= 0) continue;
    g.component[i] = comp;
    queue.push_back(i);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& [v, diag] : g.adj[u]) {
        if (g.component[v] < 0) {
          g.component[v] = comp;
          queue.push_back(v);
        }
      }
    }
    ++comp;
  }
  return g;
}

void dump_clearance_pgm(const DistanceMap& dmap, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  double max_c = 0.0;
  for (const double v : dmap.values) max_c = std::max(max_c, v);
  if (max_c <= 0.0) max_c = 1.0;
  out << "P5\n" << dmap.width << " " << dmap.height << "\n255\n";
  std::vector<unsigned char> raw(dmap.values.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    raw[i] = static_cast<unsigned char>(
        std::lround(dmap.values[i] / max_c * 255.0));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
}

void dump_ridges_pgm(const GvdGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "P5\n" << graph.width << " " << graph.height << "\n255\n";
  std::vector<unsigned char> raw(
      static_cast<std::size_t>(graph.width) * graph.height, 0);
  for (const GvdNode& n : graph.nodes)
    raw[static_cast<std::size_t>(n.cell.row) * graph.width + n.cell.col] = 255;
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
}

void dump_graph_edges(const GvdGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  for (int i = 0; i < static_cast<int>(graph.nodes.size()); ++i) {
    for (const auto& [j, diag] : graph.adj[i]) {
      if (j < i) continue;  // each undirected edge once
      const GvdNode& a = graph.nodes[i];
      const GvdNode& b = graph.nodes[j];
      out << "(" << a.cell.col << "," << a.cell.row << "," << a.radius_m
          << ") -- (" << b.cell.col << "," << b.cell.row << "," << b.radius_m
          << ") " << graph.edge_weight(diag) << "\n";
    }
  }
}

}  // namespace gvdx

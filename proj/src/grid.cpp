#include "gvdx/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gvdx {

namespace {

constexpr int kDefaultOccThresh = 165;  // of darkness 0..255
constexpr int kDefaultFreeThresh = 40;

constexpr int kPgmOccupied = 0;
constexpr int kPgmFree = 254;
constexpr int kPgmUnknown = 205;

struct Sidecar {
  double resolution = 0.1;
  double origin_x = 0.0;
  double origin_y = 0.0;
  int occupied_thresh = kDefaultOccThresh;
  int free_thresh = kDefaultFreeThresh;
  bool closed_world = true;
  int width = -1;   // optional, validated against the image when set
  int height = -1;
  bool has_start = false;
  double start_x = 0.0, start_y = 0.0, start_heading = 0.0;
  std::string name;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

std::string sidecar_path(const std::string& map_path) {
  auto dot = map_path.find_last_of('.');
  auto slash = map_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return map_path + ".cfg";
  return map_path.substr(0, dot) + ".cfg";
}

Sidecar read_sidecar(const std::string& map_path) {
  Sidecar sc;
  std::ifstream in(sidecar_path(map_path));
  if (!in) return sc;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string val = line.substr(colon + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      auto e = s.find_last_not_of(" \t\r");
      s.resize(e == std::string::npos ? 0 : e + 1);
    };
    trim(key);
    trim(val);
    std::istringstream vs(val);
    if (key == "resolution") vs >> sc.resolution;
    else if (key == "origin") vs >> sc.origin_x >> sc.origin_y;
    else if (key == "occupied_thresh") vs >> sc.occupied_thresh;
    else if (key == "free_thresh") vs >> sc.free_thresh;
    else if (key == "closed_world") sc.closed_world = (val == "true" || val == "1");
    else if (key == "width") vs >> sc.width;
    else if (key == "height") vs >> sc.height;
    else if (key == "start") { vs >> sc.start_x >> sc.start_y >> sc.start_heading; sc.has_start = true; }
    else if (key == "name") sc.name = val;
    else if (key == "seed") { vs >> sc.seed; sc.has_seed = true; }
    // unrecognized keys are ignored
  }
  if (sc.resolution <= 0.0)
    throw std::runtime_error("sidecar: resolution must be > 0");
  return sc;
}

// Reads one whitespace/comment-delimited token from a PGM header.
std::string next_pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

OccupancyGrid load_pgm(const std::string& path, std::ifstream& in,
                       const std::string& magic) {
  const Sidecar sc = read_sidecar(path);
  const std::string w_tok = next_pgm_token(in);
  const std::string h_tok = next_pgm_token(in);
  const std::string max_tok = next_pgm_token(in);
  if (w_tok.empty() || h_tok.empty() || max_tok.empty())
    throw std::runtime_error("malformed PGM header: " + path);
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(w_tok);
    height = std::stoi(h_tok);
    maxval = std::stoi(max_tok);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed PGM header: " + path);
  }
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
    throw std::runtime_error("malformed PGM header: " + path);
  if ((sc.width >= 0 && sc.width != width) ||
      (sc.height >= 0 && sc.height != height))
    throw std::runtime_error("sidecar dimensions do not match image: " + path);

  std::vector<int> gray(static_cast<std::size_t>(width) * height);
  if (magic == "P2") {
    for (auto& g : gray) {
      std::string t = next_pgm_token(in);
      if (t.empty()) throw std::runtime_error("truncated P2 data: " + path);
      g = std::stoi(t);
    }
  } else {  // P5, single byte per sample (maxval < 256) or big-endian pair
    const int bytes = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(gray.size() * bytes);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
      throw std::runtime_error("truncated P5 data: " + path);
    for (std::size_t i = 0; i < gray.size(); ++i)
      gray[i] = bytes == 1 ? raw[i] : (raw[2 * i] << 8) | raw[2 * i + 1];
  }

  OccupancyGrid grid = OccupancyGrid::filled(width, height, CellState::Unknown,
                                             sc.resolution, sc.origin_x,
                                             sc.origin_y);
  grid.closed_world = sc.closed_world;
  for (std::size_t i = 0; i < gray.size(); ++i) {
    // thresholds apply to darkness, scaled to 0..255
    const int v = 255 - gray[i] * 255 / maxval;
    if (v >= sc.occupied_thresh) grid.cells[i] = CellState::Occupied;
    else if (v <= sc.free_thresh) grid.cells[i] = CellState::Free;
    else grid.cells[i] = CellState::Unknown;
  }
  return grid;
}

OccupancyGrid load_ascii(const std::string& path, std::ifstream& in) {
  const Sidecar sc = read_sidecar(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw std::runtime_error("empty ASCII map: " + path);
  const int width = static_cast<int>(lines[0].size());
  const int height = static_cast<int>(lines.size());
  if ((sc.width >= 0 && sc.width != width) ||
      (sc.height >= 0 && sc.height != height))
    throw std::runtime_error("sidecar dimensions do not match map: " + path);
  OccupancyGrid grid = OccupancyGrid::filled(width, height, CellState::Unknown,
                                             sc.resolution, sc.origin_x,
                                             sc.origin_y);
  grid.closed_world = sc.closed_world;
  for (int r = 0; r < height; ++r) {
    if (static_cast<int>(lines[r].size()) != width)
      throw std::runtime_error("ragged ASCII map rows: " + path);
    for (int c = 0; c < width; ++c) {
      switch (lines[r][c]) {
        case '#': grid.at(c, r) = CellState::Occupied; break;
        case '.': grid.at(c, r) = CellState::Free; break;
        case '?': grid.at(c, r) = CellState::Unknown; break;
        default:
          throw std::runtime_error("unexpected map character '" +
                                   std::string(1, lines[r][c]) + "' in " + path);
      }
    }
  }
  return grid;
}

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

CellState cell_state_from_int(int v) {
  switch (v) {
    case 0: return CellState::Free;
    case 100: return CellState::Occupied;
    case -1: return CellState::Unknown;
    default: throw std::invalid_argument("invalid cell state encoding");
  }
}

double normalize_angle(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  if (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  return a;
}

OccupancyGrid OccupancyGrid::filled(int width, int height, CellState s,
                                    double resolution, double origin_x,
                                    double origin_y) {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dims >= 1");
  if (resolution <= 0.0) throw std::invalid_argument("resolution > 0");
  OccupancyGrid g;
  g.width = width;
  g.height = height;
  g.resolution = resolution;
  g.origin_x = origin_x;
  g.origin_y = origin_y;
  g.cells.assign(static_cast<std::size_t>(width) * height, s);
  return g;
}

Cell OccupancyGrid::world_to_cell(double x, double y) const {
  return Cell{static_cast<int>(std::lround((x - origin_x) / resolution)),
              static_cast<int>(std::lround((y - origin_y) / resolution))};
}

bool OccupancyGrid::contains_world(double x, double y) const {
  const Cell c = world_to_cell(x, y);
  return in_bounds(c.col, c.row);
}

bool operator==(const OccupancyGrid& a, const OccupancyGrid& b) {
  return a.width == b.width && a.height == b.height &&
         a.resolution == b.resolution && a.origin_x == b.origin_x &&
         a.origin_y == b.origin_y && a.closed_world == b.closed_world &&
         a.cells == b.cells;
}

OccupancyGrid load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  // sniff: PGM magic or ASCII rows
  char m[2] = {0, 0};
  in.read(m, 2);
  if (m[0] == 'P' && (m[1] == '2' || m[1] == '5'))
    return load_pgm(path, in, std::string(m, 2));
  in.clear();
  in.seekg(0);
  return load_ascii(path, in);
}

void save_map(const OccupancyGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write map file: " + path);
  if (has_suffix(path, ".pgm")) {
    out << "P5\n" << grid.width << " " << grid.height << "\n255\n";
    std::vector<unsigned char> raw(grid.cells.size());
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
      switch (grid.cells[i]) {
        case CellState::Occupied: raw[i] = kPgmOccupied; break;
        case CellState::Free: raw[i] = kPgmFree; break;
        case CellState::Unknown: raw[i] = kPgmUnknown; break;
      }
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  } else {
    std::string line(grid.width, '.');
    for (int r = 0; r < grid.height; ++r) {
      for (int c = 0; c < grid.width; ++c) {
        switch (grid.at(c, r)) {
          case CellState::Occupied: line[c] = '#'; break;
          case CellState::Free: line[c] = '.'; break;
          case CellState::Unknown: line[c] = '?'; break;
        }
      }
      out << line << "\n";
    }
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);

  std::ofstream cfg(sidecar_path(path));
  if (!cfg) throw std::runtime_error("cannot write sidecar for: " + path);
  cfg << "resolution: " << grid.resolution << "\n"
      << "origin: " << grid.origin_x << " " << grid.origin_y << "\n"
      << "occupied_thresh: " << kDefaultOccThresh << "\n"
      << "free_thresh: " << kDefaultFreeThresh << "\n"
      << "closed_world: " << (grid.closed_world ? "true" : "false") << "\n"
      << "width: " << grid.width << "\n"
      << "height: " << grid.height << "\n";
}

BinaryImage binarize(const OccupancyGrid& grid) {
  BinaryImage img;
  img.width = grid.width;
  img.height = grid.height;
  img.bits.resize(grid.cells.size());
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
    img.bits[i] = grid.cells[i] == CellState::Free ? 0 : 1;
  if (grid.closed_world) {
    for (int c = 0; c < grid.width; ++c) {
      img.bits[c] = 1;
      img.bits[static_cast<std::size_t>(grid.height - 1) * grid.width + c] = 1;
    }
    for (int r = 0; r < grid.height; ++r) {
      img.bits[static_cast<std::size_t>(r) * grid.width] = 1;
      img.bits[static_cast<std::size_t>(r) * grid.width + grid.width - 1] = 1;
    }
  }
  return img;
}

OccupancyGrid local_window(const OccupancyGrid& grid, const Pose& center,
                           double side_m) {
  if (side_m <= 0.0) throw std::invalid_argument("window side must be > 0");
  const Cell cc = grid.world_to_cell(center.x, center.y);
  if (!grid.in_bounds(cc.col, cc.row))
    throw std::out_of_range("window center outside the map");
  int side = static_cast<int>(std::ceil(side_m / grid.resolution));
  if (side % 2 == 0) side += 1;  // force odd so the center cell is exact
  const int half = side / 2;
  const int c0 = std::max(0, cc.col - half);
  const int c1 = std::min(grid.width - 1, cc.col + half);
  const int r0 = std::max(0, cc.row - half);
  const int r1 = std::min(grid.height - 1, cc.row + half);
  OccupancyGrid sub = OccupancyGrid::filled(
      c1 - c0 + 1, r1 - r0 + 1, CellState::Unknown, grid.resolution,
      grid.origin_x + c0 * grid.resolution,
      grid.origin_y + r0 * grid.resolution);
  sub.closed_world = grid.closed_world;
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) sub.at(c - c0, r - r0) = grid.at(c, r);
  return sub;
}

double map_entropy(const OccupancyGrid& grid) {
  std::size_t unknown = 0;
  for (const CellState s : grid.cells)
    if (s == CellState::Unknown) ++unknown;
  return static_cast<double>(unknown);
}

}  // namespace gvdx

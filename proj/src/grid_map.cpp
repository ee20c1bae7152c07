#include "parhca/grid_map.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace parhca {

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("map dimensions must be positive");
  blocked_.assign(static_cast<std::size_t>(width) * height, 0);
}

void GridMap::set_obstacle(Coord c, bool obstacle) {
  if (!in_bounds(c)) throw std::out_of_range("obstacle outside map");
  blocked_[index(c)] = obstacle ? 1 : 0;
}

int GridMap::free_count() const {
  int n = 0;
  for (auto b : blocked_) n += b == 0;
  return n;
}

std::vector<Coord> GridMap::obstacles() const {
  std::vector<Coord> out;
  for (int i = 0; i < cell_count(); ++i)
    if (blocked_[i]) out.push_back(coord(i));
  return out;
}

std::vector<Coord> neighbors4(Coord c, const GridMap& map) {
  static constexpr int dx[4] = {1, -1, 0, 0};
  static constexpr int dy[4] = {0, 0, 1, -1};
  std::vector<Coord> out;
  out.reserve(4);
  for (int k = 0; k < 4; ++k) {
    Coord n{c.x + dx[k], c.y + dy[k]};
    if (map.passable(n)) out.push_back(n);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ > text_.size()) return false;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

int header_value(std::string_view line, std::string_view key) {
  line = trim(line);
  if (line.substr(0, key.size()) != key)
    throw MapFormatError("expected '" + std::string(key) + "' header");
  auto rest = trim(line.substr(key.size()));
  int value = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc{} || ptr != rest.data() + rest.size() || value <= 0)
    throw MapFormatError("bad value for '" + std::string(key) + "'");
  return value;
}

}  // namespace

GridMap parse_movingai_map(std::string_view text) {
  LineReader lines(text);
  std::string_view line;
  if (!lines.next(line) || trim(line).substr(0, 4) != "type")
    throw MapFormatError("expected 'type' header");

  int height = 0, width = 0;
  // height and width may come in either order
  for (int k = 0; k < 2; ++k) {
    if (!lines.next(line)) throw MapFormatError("truncated header");
    auto t = trim(line);
    if (t.substr(0, 6) == "height")
      height = header_value(t, "height");
    else if (t.substr(0, 5) == "width")
      width = header_value(t, "width");
    else
      throw MapFormatError("expected 'height' or 'width' header");
  }
  if (height == 0 || width == 0) throw MapFormatError("missing dimension header");
  if (!lines.next(line) || trim(line) != "map")
    throw MapFormatError("expected 'map' line");

  GridMap map(width, height);
  for (int y = 0; y < height; ++y) {
    if (!lines.next(line))
      throw MapFormatError("expected " + std::to_string(height) + " rows, got " +
                           std::to_string(y));
    if (static_cast<int>(line.size()) != width)
      throw MapFormatError("row " + std::to_string(y) + " has length " +
                           std::to_string(line.size()) + ", expected " +
                           std::to_string(width));
    for (int x = 0; x < width; ++x) {
      switch (line[x]) {
        case '.':
        case 'G':
          break;
        case '@':
        case 'O':
        case 'T':
          map.set_obstacle({x, y});
          break;
        default:
          throw MapFormatError(std::string("unknown cell character '") + line[x] +
                               "' at row " + std::to_string(y));
      }
    }
  }
  while (lines.next(line))
    if (!trim(line).empty()) throw MapFormatError("trailing data after map rows");
  return map;
}

std::string write_movingai_map(const GridMap& map) {
  std::ostringstream out;
  out << "type octile\nheight " << map.height() << "\nwidth " << map.width()
      << "\nmap\n";
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) out << (map.blocked({x, y}) ? '@' : '.');
    out << '\n';
  }
  return out.str();
}

namespace {

// floor(v * parts / extent) without overflow for realistic map sizes
int scaled_floor(int v, int parts, int extent) {
  return static_cast<int>(static_cast<long long>(v) * parts / extent);
}

// Smallest v with floor(v * parts / extent) >= k, i.e. ceil(k * extent / parts).
int scaled_cut(int k, int parts, int extent) {
  long long num = static_cast<long long>(k) * extent;
  return static_cast<int>((num + parts - 1) / parts);
}

}  // namespace

GridMap downsample_map(const GridMap& map, int target_width, int target_height,
                       DownsampleRule rule) {
  if (target_width <= 0 || target_height <= 0)
    throw std::invalid_argument("target dimensions must be positive");
  if (target_width > map.width() || target_height > map.height())
    throw std::invalid_argument("downsampling cannot enlarge a map");

  std::vector<int> obstacles(static_cast<std::size_t>(target_width) * target_height, 0);
  std::vector<int> totals(obstacles.size(), 0);
  for (int y = 0; y < map.height(); ++y) {
    int ty = scaled_floor(y, target_height, map.height());
    for (int x = 0; x < map.width(); ++x) {
      int tx = scaled_floor(x, target_width, map.width());
      auto k = static_cast<std::size_t>(ty) * target_width + tx;
      ++totals[k];
      obstacles[k] += map.blocked({x, y});
    }
  }

  GridMap out(target_width, target_height);
  for (int ty = 0; ty < target_height; ++ty) {
    for (int tx = 0; tx < target_width; ++tx) {
      auto k = static_cast<std::size_t>(ty) * target_width + tx;
      bool blocked = rule == DownsampleRule::majority ? 2 * obstacles[k] >= totals[k]
                                                      : obstacles[k] > 0;
      if (blocked) out.set_obstacle({tx, ty});
    }
  }
  return out;
}

GridMap generate_random_map(int width, int height, double obstacle_probability,
                            std::uint64_t seed) {
  if (!(obstacle_probability >= 0.0 && obstacle_probability < 1.0))
    throw std::invalid_argument("obstacle probability must lie in [0, 1)");
  GridMap map(width, height);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(obstacle_probability);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (coin(rng)) map.set_obstacle({x, y});
  return map;
}

Factorization balanced_factorization(int n) {
  if (n < 1) throw std::invalid_argument("factorization requires n >= 1");
  const double root = std::sqrt(static_cast<double>(n));
  Factorization best{1, n};
  double best_score = std::numeric_limits<double>::infinity();
  for (int p = 1; static_cast<long long>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    int q = n / p;
    double score = (p - root) * (p - root) + (q - root) * (q - root);
    if (score < best_score) {
      best_score = score;
      best = {p, q};
    }
  }
  return best;
}

Partitioning::Partitioning(const GridMap& map, int n_parts)
    : n_parts_(n_parts), width_(map.width()), height_(map.height()) {
  if (n_parts < 1) throw std::invalid_argument("need at least one partition");
  auto f = balanced_factorization(n_parts);
  if (f.p == 1 && height_ > width_) {
    // prime (or 1): strips run across the longer side
    rows_ = f.q;
    cols_ = 1;
  } else {
    rows_ = f.p;
    cols_ = f.q;
  }
}

int Partitioning::partition_of(Coord c) const {
  if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_)
    throw std::out_of_range("coordinate outside partitioned map");
  int col = scaled_floor(c.x, cols_, width_);
  int row = scaled_floor(c.y, rows_, height_);
  return row * cols_ + col;
}

CellRect Partitioning::bounds(int id) const {
  if (id < 0 || id >= n_parts_) throw std::out_of_range("partition id");
  int row = id / cols_;
  int col = id % cols_;
  return {scaled_cut(col, cols_, width_), scaled_cut(col + 1, cols_, width_),
          scaled_cut(row, rows_, height_), scaled_cut(row + 1, rows_, height_)};
}

int partition_of(Coord c, const GridMap& map, const Partitioning& part) {
  if (map.width() != part.map_width() || map.height() != part.map_height())
    throw std::invalid_argument("partitioning was built for a different map");
  return part.partition_of(c);
}

}  // namespace parhca

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parhca {

/// Grid cell. x is the column, y the row; the origin is the top-left corner.
struct Coord {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

class MapFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 4-connected occupancy grid. Immutable once handed to a solver.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  /// Side length used by the bit-cost formulas (max of width and height).
  int side() const { return width_ > height_ ? width_ : height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Coord c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  bool blocked(Coord c) const { return blocked_[index(c)] != 0; }
  bool passable(Coord c) const { return in_bounds(c) && !blocked(c); }
  void set_obstacle(Coord c, bool obstacle = true);

  int index(Coord c) const { return c.y * width_ + c.x; }
  Coord coord(int index) const { return {index % width_, index / width_}; }

  int free_count() const;
  std::vector<Coord> obstacles() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> blocked_;
};

/// Up to four passable orthogonal neighbours of `c`, in the fixed order
/// +x, -x, +y, -y.
std::vector<Coord> neighbors4(Coord c, const GridMap& map);

/// Reads the MovingAI `.map` grid format. `.` and `G` are free; `@`, `O`,
/// `T` are obstacles. Throws MapFormatError.
GridMap parse_movingai_map(std::string_view text);
std::string write_movingai_map(const GridMap& map);

enum class DownsampleRule { majority, any_obstacle };

/// Aggregates source cells into a smaller grid. Target cell (i, j) covers the
/// source cells whose floor-scaled coordinates land on (i, j). Under
/// `majority` a target cell is blocked when at least half its block is.
GridMap downsample_map(const GridMap& map, int target_width, int target_height,
                       DownsampleRule rule = DownsampleRule::majority);

/// Bernoulli obstacle field, deterministic for a given seed.
GridMap generate_random_map(int width, int height, double obstacle_probability,
                            std::uint64_t seed);

struct Factorization {
  int p = 1;  // rows of blocks
  int q = 1;  // columns of blocks
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Divisor pair p * q == n with p <= q minimising (p - sqrt n)^2 + (q - sqrt n)^2.
Factorization balanced_factorization(int n);

/// Half-open cell rectangle [x0, x1) x [y0, y1).
struct CellRect {
  int x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool contains(Coord c) const {
    return c.x >= x0 && c.x < x1 && c.y >= y0 && c.y < y1;
  }
  int area() const { return (x1 - x0) * (y1 - y0); }
};

/// Splits a map into `n` rectangular submaps. Composite n uses a
/// balanced rows x columns grid; prime n uses strips cut along the longer
/// side. Lookup is constant time: column = floor(x * cols / width),
/// row = floor(y * rows / height), id = row * cols + column.
class Partitioning {
 public:
  Partitioning(const GridMap& map, int n_parts);

  int parts() const { return n_parts_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int map_width() const { return width_; }
  int map_height() const { return height_; }

  /// Throws std::out_of_range for cells outside the map.
  int partition_of(Coord c) const;
  /// Exact cell set owned by `id` under the floor lookup (may be empty when
  /// there are more parts than cells along an axis).
  CellRect bounds(int id) const;

 private:
  int n_parts_ = 1;
  int rows_ = 1;
  int cols_ = 1;
  int width_ = 0;
  int height_ = 0;
};

int partition_of(Coord c, const GridMap& map, const Partitioning& part);

}  // namespace parhca

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace goalnav {

// Integer map cell. (x, y) index a row-major S x S grid; x is the column
// (world x direction), y the row (world y direction).
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Dense 2D grid with (x, y) cell addressing.
template <typename T>
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("Grid2D: non-positive dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool in_bounds(Cell c) const { return in_bounds(c.x, c.y); }

  T& at(int x, int y) { return data_[idx(x, y)]; }
  const T& at(int x, int y) const { return data_[idx(x, y)]; }
  T& at(Cell c) { return at(c.x, c.y); }
  const T& at(Cell c) const { return at(c.x, c.y); }

  void fill(T v) { data_.assign(data_.size(), v); }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using BoolGrid = Grid2D<std::uint8_t>;
using FloatGrid = Grid2D<float>;

}  // namespace goalnav

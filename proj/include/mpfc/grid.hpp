#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mpfc {

/// Integer cell index. `i` runs along the horizontal (east) axis, `j` along
/// the vertical (north) axis; both are zero-based.
struct Cell {
  int i = 0;
  int j = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Dense n_h x n_v matrix stored row-major in `i` (index i * n_v + j).
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int nh, int nv, T fill = T{}) : nh_(nh), nv_(nv) {
    if (nh < 0 || nv < 0) {
      throw std::invalid_argument("grid dimensions must be non-negative");
    }
    data_.assign(static_cast<std::size_t>(nh) * static_cast<std::size_t>(nv), fill);
  }

  int nh() const { return nh_; }
  int nv() const { return nv_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < nh_ && j < nv_; }
  bool contains(Cell c) const { return contains(c.i, c.j); }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(nv_) + static_cast<std::size_t>(j);
  }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }
  T& operator[](Cell c) { return (*this)(c.i, c.j); }
  const T& operator[](Cell c) const { return (*this)(c.i, c.j); }

  T& at(int i, int j) {
    if (!contains(i, j)) throw std::out_of_range("grid index out of range");
    return (*this)(i, j);
  }
  const T& at(int i, int j) const {
    if (!contains(i, j)) throw std::out_of_range("grid index out of range");
    return (*this)(i, j);
  }

  void fill(const T& v) { std::fill(data_.begin(), data_.end(), v); }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool same_shape(const Grid& other) const { return nh_ == other.nh_ && nv_ == other.nv_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int nh_ = 0;
  int nv_ = 0;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;

}  // namespace mpfc

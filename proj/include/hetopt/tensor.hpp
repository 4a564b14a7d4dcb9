#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace hetopt {

// Dense row-major 3-D array of doubles; the last axis is contiguous.
class Array3 {
 public:
  Array3() = default;
  Array3(int n0, int n1, int n2, double fill = 0.0)
      : n0_(n0), n1_(n1), n2_(n2),
        data_(static_cast<std::size_t>(n0) * n1 * n2, fill) {}

  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  std::span<double> row(int i, int j) {
    return {data_.data() + index(i, j, 0), static_cast<std::size_t>(n2_)};
  }
  std::span<const double> row(int i, int j) const {
    return {data_.data() + index(i, j, 0), static_cast<std::size_t>(n2_)};
  }

  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t index(int i, int j, int k) const {
    assert(i >= 0 && i < n0_ && j >= 0 && j < n1_ && k >= 0 && k < n2_);
    return (static_cast<std::size_t>(i) * n1_ + j) * n2_ + k;
  }

  int n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<double> data_;
};

}  // namespace hetopt

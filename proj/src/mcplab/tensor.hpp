#pragma once

#include <cstddef>
#include <vector>

namespace mcplab {

// Dense cubic arrays indexed in a fixed frame. Storage is row-major in the
// order the indices are written.

class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const noexcept { return dim_; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const noexcept { return dim_; }
  double& operator()(int i, int j, int k, int l) { return data_[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[index(i, j, k, l)]; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

}  // namespace mcplab

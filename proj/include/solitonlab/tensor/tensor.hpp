#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "solitonlab/error.hpp"

namespace solitonlab::tensor {

/// A point of a coordinate chart (chart units).
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : x_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : x_(coords) {}

  int dim() const { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return x_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return x_; }

 private:
  std::vector<double> x_;
};

/// Dense covariant tensor of a given rank over an n-dimensional chart, stored
/// row-major (last index fastest).
template <class T>
class BasicTensor {
 public:
  BasicTensor() = default;
  BasicTensor(int dim, int rank, const T& fill = T{}) : dim_(dim), rank_(rank) {
    std::size_t count = 1;
    for (int r = 0; r < rank; ++r) count *= static_cast<std::size_t>(dim);
    data_.assign(count, fill);
  }

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat({static_cast<int>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat({static_cast<int>(idx)...})];
  }
  T& at(std::size_t i) { return data_[i]; }
  const T& at(std::size_t i) const { return data_[i]; }

  std::size_t flat(std::initializer_list<int> idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return f;
  }
  /// Multi-index of a flat position.
  std::vector<int> unflat(std::size_t f) const {
    std::vector<int> idx(static_cast<std::size_t>(rank_));
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[r] = static_cast<int>(f % static_cast<std::size_t>(dim_));
      f /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

using Tensor = BasicTensor<double>;

}  // namespace solitonlab::tensor

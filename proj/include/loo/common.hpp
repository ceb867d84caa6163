#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace loo {

using Node = std::size_t;

/// Largest supported network. Path counts and distances are stored as
/// 16-bit integers and neighborhood members as 16-bit node ids.
inline constexpr std::size_t kMaxNodes = 32767;

/// A precondition on a numeric argument (level, size, coordinate) failed.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An index or structural argument is inconsistent with its container.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input data (adjacency files, config files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major n x n matrix with value semantics.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * n_ + c]; }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * n_, n_}; }
  std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * n_, n_}; }

  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace loo

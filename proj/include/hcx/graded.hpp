#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hcx {

// Vector indexed by dimension, starting at -1 (the empty face).
template <typename T>
class GradedVector {
 public:
  GradedVector() = default;
  // Covers dimensions -1..maxDim.
  explicit GradedVector(int maxDim, T init = T{})
      : values_(static_cast<std::size_t>(maxDim + 2), init) {}

  int min_dim() const { return -1; }
  int max_dim() const { return static_cast<int>(values_.size()) - 2; }
  bool has(int d) const { return d >= -1 && d <= max_dim(); }

  typename std::vector<T>::reference operator[](int d) { return values_[index(d)]; }
  typename std::vector<T>::const_reference operator[](int d) const { return values_[index(d)]; }

  // Out-of-range dimensions read as zero.
  T get_or(int d, T fallback = T{}) const { return has(d) ? (*this)[d] : fallback; }

  const std::vector<T>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const GradedVector&, const GradedVector&) = default;

 private:
  std::size_t index(int d) const {
    if (!has(d)) throw std::out_of_range("dimension out of range");
    return static_cast<std::size_t>(d + 1);
  }
  std::vector<T> values_;
};

}  // namespace hcx

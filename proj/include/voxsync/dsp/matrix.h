#ifndef VOXSYNC_DSP_MATRIX_H_
#define VOXSYNC_DSP_MATRIX_H_

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace voxsync::dsp {

// Dense row-major matrix. Rows are frames, columns are bins.
template <typename T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  T operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;
using ComplexMatrix = BasicMatrix<std::complex<double>>;

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_MATRIX_H_

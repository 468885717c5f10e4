#pragma once

#include <cstdint>
#include <vector>

#include "naesat/error.hpp"

namespace naesat {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
    if (rows < 0 || cols < 0) fail(errc::infeasible_parameters, "negative matrix dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::int64_t& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  std::int64_t at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

enum class MatMulKind { naive, strassen };

IntMatrix multiply_naive(const IntMatrix& a, const IntMatrix& b);
IntMatrix multiply_strassen(const IntMatrix& a, const IntMatrix& b);

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, MatMulKind kind) {
  return kind == MatMulKind::naive ? multiply_naive(a, b) : multiply_strassen(a, b);
}

}  // namespace naesat

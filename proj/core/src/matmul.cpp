#include "naesat/matmul.hpp"

#include <algorithm>
#include <bit>

namespace naesat {

IntMatrix multiply_naive(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) fail(errc::infeasible_parameters, "inner dimensions do not match");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const std::int64_t aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

namespace {

constexpr int kStrassenCutoff = 64;

IntMatrix pad(const IntMatrix& m, int size) {
  IntMatrix out(size, size);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
  return out;
}

IntMatrix block(const IntMatrix& m, int r0, int c0, int size) {
  IntMatrix out(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) out.at(i, j) = m.at(r0 + i, c0 + j);
  return out;
}

void place(IntMatrix& dst, const IntMatrix& src, int r0, int c0) {
  for (int i = 0; i < src.rows(); ++i)
    for (int j = 0; j < src.cols(); ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

IntMatrix add(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

IntMatrix strassen_square(const IntMatrix& a, const IntMatrix& b) {
  const int n = a.rows();
  if (n <= kStrassenCutoff) return multiply_naive(a, b);
  const int h = n / 2;
  const IntMatrix a11 = block(a, 0, 0, h), a12 = block(a, 0, h, h);
  const IntMatrix a21 = block(a, h, 0, h), a22 = block(a, h, h, h);
  const IntMatrix b11 = block(b, 0, 0, h), b12 = block(b, 0, h, h);
  const IntMatrix b21 = block(b, h, 0, h), b22 = block(b, h, h, h);

  const IntMatrix m1 = strassen_square(add(a11, a22), add(b11, b22));
  const IntMatrix m2 = strassen_square(add(a21, a22), b11);
  const IntMatrix m3 = strassen_square(a11, sub(b12, b22));
  const IntMatrix m4 = strassen_square(a22, sub(b21, b11));
  const IntMatrix m5 = strassen_square(add(a11, a12), b22);
  const IntMatrix m6 = strassen_square(sub(a21, a11), add(b11, b12));
  const IntMatrix m7 = strassen_square(sub(a12, a22), add(b21, b22));

  IntMatrix c(n, n);
  place(c, add(sub(add(m1, m4), m5), m7), 0, 0);
  place(c, add(m3, m5), 0, h);
  place(c, add(m2, m4), h, 0);
  place(c, add(sub(add(m1, m3), m2), m6), h, h);
  return c;
}

}  // namespace

IntMatrix multiply_strassen(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) fail(errc::infeasible_parameters, "inner dimensions do not match");
  const int dim = std::max({a.rows(), a.cols(), b.cols(), 1});
  const int size = static_cast<int>(std::bit_ceil(static_cast<unsigned>(dim)));
  const IntMatrix full = strassen_square(pad(a, size), pad(b, size));
  IntMatrix out(a.rows(), b.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out.at(i, j) = full.at(i, j);
  return out;
}

}  // namespace naesat

#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace lwrobust {

// Dense row-major matrix of doubles. Vectors are r x 1 or 1 x c, scalars 1 x 1.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c, double fill = 0.0)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

  static Mat scalar(double v) {
    Mat m(1, 1);
    m.a[0] = v;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  int size() const { return rows * cols; }
  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

// C += op(A) * op(B), naive loops; shapes must already agree.
inline void matmul_acc(const Mat& A, bool ta, const Mat& B, bool tb, Mat& C) {
  const int m = ta ? A.cols : A.rows;
  const int k = ta ? A.rows : A.cols;
  const int n = tb ? B.rows : B.cols;
  assert((tb ? B.cols : B.rows) == k);
  assert(C.rows == m && C.cols == n);
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      const double av = ta ? A(p, i) : A(i, p);
      if (av == 0.0) continue;
      const double* brow;
      if (!tb) {
        brow = &B.a[static_cast<std::size_t>(p) * B.cols];
        double* crow = &C.a[static_cast<std::size_t>(i) * C.cols];
        for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
      } else {
        double* crow = &C.a[static_cast<std::size_t>(i) * C.cols];
        for (int j = 0; j < n; ++j) crow[j] += av * B(j, p);
      }
    }
  }
}

inline Mat matmul(const Mat& A, bool ta, const Mat& B, bool tb) {
  const int m = ta ? A.cols : A.rows;
  const int n = tb ? B.rows : B.cols;
  Mat C(m, n, 0.0);
  matmul_acc(A, ta, B, tb, C);
  return C;
}

}  // namespace lwrobust

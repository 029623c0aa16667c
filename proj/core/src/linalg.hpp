#pragma once

// Small dense routines for rank <= 8 systems: LU solve, inversion,
// numeric rank, kernel directions, Cholesky.  Row-major flat storage.

#include <cmath>
#include <cstdlib>
#include <vector>

namespace coxassoc::linalg {

using Mat = std::vector<double>;

// Solves A x = b for square A; returns false when a pivot falls below tol.
inline bool lu_solve(int n, Mat a, std::vector<double> b, std::vector<double>& x,
                     double tol = 1e-12) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < tol) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
    x[r] = acc / (a[r * n + r]);
  }
  return true;
}

inline bool invert(int n, const Mat& a, Mat& out, double tol = 1e-12) {
  out.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int col = 0; col < n; ++col) {
    std::vector<double> e(n, 0.0), x;
    e[col] = 1.0;
    if (!lu_solve(n, a, e, x, tol)) return false;
    for (int r = 0; r < n; ++r) out[r * n + col] = x[r];
  }
  return true;
}

inline Mat matmul(int n, const Mat& a, const Mat& b) {
  Mat c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double f = a[i * n + k];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] += f * b[k * n + j];
    }
  return c;
}

// Numeric row rank of a rows x cols matrix (destructive Gauss).
inline int mat_rank(int rows, int cols, Mat m, double tol = 1e-7) {
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::abs(m[r * cols + col]) > best) {
        best = std::abs(m[r * cols + col]);
        piv = r;
      }
    if (piv < 0) continue;
    for (int c = 0; c < cols; ++c) std::swap(m[piv * cols + c], m[rank * cols + c]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = m[r * cols + col] / m[rank * cols + col];
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) m[r * cols + c] -= f * m[rank * cols + c];
    }
    ++rank;
  }
  return rank;
}

// One kernel direction of a rows x n matrix, empty when the kernel is
// trivial within tol.
inline std::vector<double> kernel_direction(int rows, int n, Mat m, double tol = 1e-9) {
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < rows; ++col) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::abs(m[r * n + col]) > best) {
        best = std::abs(m[r * n + col]);
        piv = r;
      }
    if (piv < 0) continue;
    for (int c = 0; c < n; ++c) std::swap(m[piv * n + c], m[rank * n + c]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = m[r * n + col] / m[rank * n + col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) m[r * n + c] -= f * m[rank * n + c];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  std::vector<char> is_pivot(n, 0);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = 1;
  int free_col = -1;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  if (free_col < 0) return {};
  std::vector<double> d(n, 0.0);
  d[free_col] = 1.0;
  for (int r = rank - 1; r >= 0; --r) {
    int pc = pivot_col[r];
    double acc = 0.0;
    for (int c = pc + 1; c < n; ++c) acc += m[r * n + c] * d[c];
    d[pc] = -acc / m[r * n + pc];
  }
  double peak = 0.0;
  for (double v : d) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : d) v /= peak;
  return d;
}

// Lower-triangular L with L L^T = G; returns false unless G is SPD.
inline bool cholesky(int n, const Mat& g, Mat& l) {
  l.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = g[i * n + j];
      for (int k = 0; k < j; ++k) acc -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (acc <= 0.0) return false;
        l[i * n + i] = std::sqrt(acc);
      } else {
        l[i * n + j] = acc / l[j * n + j];
      }
    }
  }
  return true;
}

}  // namespace coxassoc::linalg

#include "conbias/linalg.hpp"

#include <cmath>
#include <utility>

namespace conbias::la {

Matrix Matrix::identity(int size) {
  Matrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
  std::vector<double> out(m.n, 0.0);
  for (int i = 0; i < m.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m.n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Matrix matmul(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.n);
  for (int i = 0; i < lhs.n; ++i)
    for (int k = 0; k < lhs.n; ++k) {
      const double lik = lhs(i, k);
      if (lik == 0.0) continue;
      for (int j = 0; j < lhs.n; ++j) out(i, j) += lik * rhs(k, j);
    }
  return out;
}

bool solve(Matrix a, std::vector<double> rhs, std::vector<double>& x,
           double tol, int* pivot_col) {
  const int n = a.n;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
    if (std::fabs(a(pivot, col)) < tol) {
      if (pivot_col) *pivot_col = col;
      return false;
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      std::swap(rhs[pivot], rhs[col]);
    }
    const double inv = 1.0 / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      rhs[r] -= f * rhs[col];
    }
  }
  x.assign(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double acc = rhs[i];
    for (int j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return true;
}

bool invert(const Matrix& a, Matrix& inv, double tol, int* pivot_col) {
  const int n = a.n;
  inv = Matrix(n);
  std::vector<double> e(n, 0.0), col;
  for (int j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    if (!solve(a, e, col, tol, pivot_col)) return false;
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return true;
}

}  // namespace conbias::la

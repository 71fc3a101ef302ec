#pragma once

#include <cstddef>
#include <vector>

namespace conbias::la {

// Dense square matrix, row-major. Everything in this project is tiny
// (n <= a few dozen), so no attempt at blocking or sparsity.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

  static Matrix identity(int size);

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

std::vector<double> matvec(const Matrix& m, const std::vector<double>& v);
Matrix matmul(const Matrix& lhs, const Matrix& rhs);

// Gaussian elimination with partial pivoting. Returns false when a pivot
// falls below tol; `pivot_col` (if given) then names the offending column.
bool solve(Matrix a, std::vector<double> rhs, std::vector<double>& x,
           double tol = 1e-12, int* pivot_col = nullptr);

// Inverse via n solves against the identity; same failure convention.
bool invert(const Matrix& a, Matrix& inv, double tol = 1e-12, int* pivot_col = nullptr);

}  // namespace conbias::la

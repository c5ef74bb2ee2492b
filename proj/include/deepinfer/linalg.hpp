#pragma once

// Small dense row-major matrices and the pseudoinverse used to pull layer
// predicates back through a weight matrix.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace deepinfer::linalg {

using Vector = std::vector<double>;

inline constexpr double kDefaultRcond = 1e-10;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Throws DimensionError when M.cols() != v.size().
Vector matvec(const Matrix& m, std::span<const double> v);
Matrix matmul(const Matrix& a, const Matrix& b);

Vector subtract(std::span<const double> a, std::span<const double> b);
Vector negate(std::span<const double> a);

// Max absolute row sum.
double norm_inf(const Matrix& m);
double max_abs(const Matrix& m);
bool all_finite(std::span<const double> v);

// Thin SVD: M = U * diag(S) * Vt with U rows x k, Vt k x cols, k = min(rows, cols).
// S is non-negative and descending.
struct Svd {
  Matrix u;
  Vector s;
  Matrix vt;
};

// Matrices whose smaller side exceeds this use divide and conquer; the rest use Jacobi.
inline constexpr std::size_t kJacobiMaxDim = 96;

Svd svd(const Matrix& m);
// One-sided Jacobi rotations on the narrower orientation.
Svd svd_jacobi(const Matrix& m);
// Bidiagonal divide and conquer (Eigen BDCSVD). Falls back to Jacobi if it
// reports failure.
Svd svd_divide_conquer(const Matrix& m);

// Moore-Penrose pseudoinverse (cols x rows). Singular values at or below
// rcond * sigma_max are treated as zero.
Matrix pinv(const Matrix& w, double rcond = kDefaultRcond);

}  // namespace deepinfer::linalg

#include "deepinfer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "deepinfer/errors.hpp"
#include "deepinfer/simd/kernels.hpp"

namespace deepinfer::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("ragged matrix: row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector matvec(const Matrix& m, std::span<const double> v) {
  if (m.cols() != v.size()) {
    throw DimensionError("matvec: matrix has " + std::to_string(m.cols()) +
                         " columns but vector has " + std::to_string(v.size()) + " entries");
  }
  const auto& k = simd::active_kernels();
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = k.dot(m.row(r).data(), v.data(), v.size());
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  const Matrix bt = b.transposed();
  const auto& k = simd::active_kernels();
  Matrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t col = 0; col < b.cols(); ++col)
      c(r, col) = k.dot(a.row(r).data(), bt.row(col).data(), a.cols());
  return c;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("subtract: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector negate(std::span<const double> a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

double norm_inf(const Matrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (double x : m.row(r)) sum += std::abs(x);
    best = std::max(best, sum);
  }
  return best;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (double x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

namespace {

// One-sided Jacobi on a matrix with rows >= cols. `cols` holds the columns of
// the input as contiguous rows (i.e. the transpose), and is orthogonalised in
// place; `vcols` accumulates the right rotations the same way.
void jacobi_orthogonalize(Matrix& cols, Matrix& vcols) {
  const auto& k = simd::active_kernels();
  const std::size_t n = cols.rows();
  const std::size_t m = cols.cols();
  const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(m, 4));
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* a = cols.row(p).data();
        double* b = cols.row(q).data();
        const simd::Gram3 g = k.gram3(a, b, m);
        if (g.aa == 0.0 || g.bb == 0.0) continue;
        if (std::abs(g.ab) <= tol * std::sqrt(g.aa) * std::sqrt(g.bb)) continue;
        rotated = true;
        const double zeta = (g.bb - g.aa) / (2.0 * g.ab);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        k.rotate(a, b, m, c, s);
        k.rotate(vcols.row(p).data(), vcols.row(q).data(), n, c, s);
      }
    }
    if (!rotated) break;
  }
}

Svd svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix cols = a.transposed();
  Matrix vcols = Matrix::identity(n);
  jacobi_orthogonalize(cols, vcols);

  const auto& k = simd::active_kernels();
  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(k.dot(cols.row(j).data(), cols.row(j).data(), m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out{Matrix(m, n), Vector(n), Matrix(n, n)};
  for (std::size_t slot = 0; slot < n; ++slot) {
    const std::size_t j = order[slot];
    const double s = sigma[j];
    out.s[slot] = s;
    for (std::size_t i = 0; i < m; ++i) out.u(i, slot) = s > 0.0 ? cols(j, i) / s : 0.0;
    for (std::size_t i = 0; i < n; ++i) out.vt(slot, i) = vcols(j, i);
  }
  return out;
}

}  // namespace

Svd svd_jacobi(const Matrix& m) {
  if (m.empty()) return {};
  if (m.rows() >= m.cols()) return svd_tall(m);
  Svd t = svd_tall(m.transposed());
  return Svd{t.vt.transposed(), std::move(t.s), t.u.transposed()};
}

Svd svd_divide_conquer(const Matrix& m) {
  if (m.empty()) return {};
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> a(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                     static_cast<Eigen::Index>(m.cols()));
  const Eigen::BDCSVD<RowMajor> d(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (d.info() != Eigen::Success) return svd_jacobi(m);
  const std::size_t k = std::min(m.rows(), m.cols());
  Svd out{Matrix(m.rows(), k), Vector(k), Matrix(k, m.cols())};
  Eigen::Map<RowMajor>(out.u.data().data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(k)) =
      d.matrixU();
  Eigen::Map<RowMajor>(out.vt.data().data(), static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m.cols())) =
      d.matrixV().transpose();
  for (std::size_t i = 0; i < k; ++i) out.s[i] = d.singularValues()[static_cast<Eigen::Index>(i)];
  return out;
}

Svd svd(const Matrix& m) {
  if (std::min(m.rows(), m.cols()) > kJacobiMaxDim) return svd_divide_conquer(m);
  return svd_jacobi(m);
}

Matrix pinv(const Matrix& w, double rcond) {
  if (w.empty()) return {};
  const Svd d = svd(w);
  const std::size_t rank_cap = d.s.size();
  const double cutoff = rcond * (d.s.empty() ? 0.0 : d.s.front());

  // gamma = V * diag(1/s) * U^T; build (V * diag(1/s)) row by row, then take
  // dot products against the rows of U.
  Matrix v_scaled(w.cols(), rank_cap);
  for (std::size_t slot = 0; slot < rank_cap; ++slot) {
    const double s = d.s[slot];
    if (!(s > cutoff) || s == 0.0) continue;
    const double inv = 1.0 / s;
    for (std::size_t r = 0; r < w.cols(); ++r) v_scaled(r, slot) = d.vt(slot, r) * inv;
  }

  const auto& k = simd::active_kernels();
  Matrix gamma(w.cols(), w.rows());
  for (std::size_t r = 0; r < w.cols(); ++r)
    for (std::size_t c = 0; c < w.rows(); ++c)
      gamma(r, c) = k.dot(v_scaled.row(r).data(), d.u.row(c).data(), rank_cap);
  return gamma;
}

}  // namespace deepinfer::linalg

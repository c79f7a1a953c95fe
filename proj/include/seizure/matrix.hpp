#pragma once

// Dense row-major matrices and the symmetric linear-algebra kernels the
// reducers are built on.

#include <cstddef>
#include <span>
#include <vector>

namespace seizure {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> col(std::size_t c) const;

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transpose() const;
  // First `n` columns.
  Matrix left_cols(std::size_t n) const;
  Matrix select_rows(std::span<const std::size_t> indices) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);

std::vector<double> column_means(const Matrix& x);
// Subtracts `mean` from every row.
Matrix center(const Matrix& x, std::span<const double> mean);

// Column covariance of an N x M data matrix: (Xc^T Xc) / (N - 1) when
// `normalize`, otherwise the raw scatter Xc^T Xc. Requires N >= 2.
Matrix covariance(const Matrix& x, bool normalize = true);

// Row Gram matrix Xc Xc^T / (N - 1) of already-centered data.
Matrix gram(const Matrix& centered);

struct EigenResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // column j pairs with values[j]
  int sweeps = 0;
};

// Cyclic Jacobi rotations. Stops when the off-diagonal Frobenius norm drops
// below 1e-12 * ||S||_F or after 100 sweeps. Each eigenvector is signed so
// its largest-magnitude entry is non-negative.
EigenResult sym_eigen(const Matrix& s);

void canonicalize_sign(std::span<double> v);

inline constexpr double kRankEpsilon = 1e-10;  // relative to the largest eigenvalue

struct Whitening {
  Matrix whitened;  // Xc * P^T
  Matrix p;         // V D^{-1/2} V^T over retained eigenpairs
  std::vector<double> mean;
  std::size_t rank = 0;
};

// Throws std::invalid_argument("zero-variance data") when no eigenvalue
// exceeds kRankEpsilon * max(lambda).
Whitening whiten(const Matrix& x);

enum class AxesRoute { automatic, covariance, gram };

// Leading eigenpairs of the covariance of `centered` (N x M), at most
// `max_count` and only those above the rank threshold. With the Gram route
// the N x N problem is solved and mapped back through Xc^T; it is chosen
// automatically when M > N.
EigenResult principal_axes(const Matrix& centered, std::size_t max_count,
                           AxesRoute route = AxesRoute::automatic);

// Solves (S + shift I) y = b for symmetric positive semi-definite S via its
// eigendecomposition. Throws when the shifted matrix is numerically singular.
std::vector<double> solve_shifted_psd(const EigenResult& eig, double shift,
                                      std::span<const double> b);

}  // namespace seizure

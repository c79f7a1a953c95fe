#include "seizure/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace seizure {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("Matrix: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::vector<double> Matrix::col(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::left_cols(std::size_t n) const {
  n = std::min(n, cols_);
  Matrix out(rows_, n);
  for (std::size_t r = 0; r < rows_; ++r)
    std::copy_n(row(r).begin(), n, out.row(r).begin());
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += aik * src[j];
    }
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("subtract: dimension mismatch");
  Matrix out = a;
  auto d = out.data();
  auto s = b.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= s[i];
  return out;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double frobenius_norm(const Matrix& a) { return norm2(a.data()); }

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> column_means(const Matrix& x) {
  std::vector<double> mean(x.cols(), 0.0);
  if (x.rows() == 0) return mean;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    auto row = x.row(r);
    for (std::size_t c = 0; c < x.cols(); ++c) mean[c] += row[c];
  }
  for (double& m : mean) m /= static_cast<double>(x.rows());
  return mean;
}

Matrix center(const Matrix& x, std::span<const double> mean) {
  if (mean.size() != x.cols()) throw std::invalid_argument("center: dimension mismatch");
  Matrix out = x;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t c = 0; c < out.cols(); ++c) row[c] -= mean[c];
  }
  return out;
}

Matrix covariance(const Matrix& x, bool normalize) {
  if (x.rows() < 2) throw std::invalid_argument("covariance: need at least 2 rows");
  const Matrix xc = center(x, column_means(x));
  const std::size_t m = x.cols();
  Matrix c(m, m);
  for (std::size_t r = 0; r < xc.rows(); ++r) {
    auto row = xc.row(r);
    for (std::size_t i = 0; i < m; ++i) {
      const double xi = row[i];
      if (xi == 0.0) continue;
      auto dst = c.row(i);
      for (std::size_t j = i; j < m; ++j) dst[j] += xi * row[j];
    }
  }
  const double scale = normalize ? 1.0 / static_cast<double>(x.rows() - 1) : 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      c(i, j) *= scale;
      c(j, i) = c(i, j);
    }
  }
  return c;
}

Matrix gram(const Matrix& centered) {
  const std::size_t n = centered.rows();
  if (n < 2) throw std::invalid_argument("gram: need at least 2 rows");
  Matrix k(n, n);
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = dot(centered.row(i), centered.row(j)) * scale;
      k(j, i) = k(i, j);
    }
  }
  return k;
}

void canonicalize_sign(std::span<double> v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // small slack so near-ties resolve to the first index reproducibly
    if (std::abs(v[i]) > best_abs * (1.0 + 1e-12)) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

EigenResult sym_eigen(const Matrix& s) {
  const std::size_t n = s.rows();
  if (s.cols() != n) throw std::invalid_argument("sym_eigen: matrix is not square");
  const double scale = std::max(1.0, max_abs(s));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-9 * scale)
        throw std::invalid_argument("sym_eigen: matrix is not symmetric");

  Matrix a = s;
  // Rows of vt are the eigenvectors, so rotations touch contiguous memory.
  Matrix vt = Matrix::identity(n);
  const double target = 1e-12 * frobenius_norm(s);

  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
  };

  EigenResult result;
  constexpr int kMaxSweeps = 100;
  while (result.sweeps < kMaxSweeps && off_norm() > target) {
    ++result.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double new_kp = c * akp - sn * akq;
          const double new_kq = sn * akp + c * akq;
          a(k, p) = a(p, k) = new_kp;
          a(k, q) = a(q, k) = new_kq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        auto vp = vt.row(p);
        auto vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double x = vp[k];
          const double y = vq[k];
          vp[k] = c * x - sn * y;
          vq[k] = sn * x + c * y;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  result.values.resize(n);
  result.vectors = Matrix(n, n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.values[j] = a(order[j], order[j]);
    auto src = vt.row(order[j]);
    std::copy(src.begin(), src.end(), v.begin());
    canonicalize_sign(v);
    for (std::size_t k = 0; k < n; ++k) result.vectors(k, j) = v[k];
  }
  return result;
}

Whitening whiten(const Matrix& x) {
  if (x.rows() < 2) throw std::invalid_argument("whiten: need at least 2 rows");
  Whitening w;
  w.mean = column_means(x);
  const Matrix xc = center(x, w.mean);
  const EigenResult eig = sym_eigen(covariance(x));
  const double lmax = eig.values.empty() ? 0.0 : eig.values.front();
  const double threshold = kRankEpsilon * lmax;
  const std::size_t m = x.cols();

  w.p = Matrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double lambda = eig.values[j];
    if (!(lmax > 0.0) || lambda <= threshold) break;
    ++w.rank;
    const double inv_sqrt = 1.0 / std::sqrt(lambda);
    for (std::size_t r = 0; r < m; ++r) {
      const double vr = eig.vectors(r, j) * inv_sqrt;
      for (std::size_t c = 0; c < m; ++c) w.p(r, c) += vr * eig.vectors(c, j);
    }
  }
  if (w.rank == 0) throw std::invalid_argument("whiten: zero-variance data");
  w.whitened = xc * w.p.transpose();
  return w;
}

EigenResult principal_axes(const Matrix& centered, std::size_t max_count, AxesRoute route) {
  const std::size_t n = centered.rows();
  const std::size_t m = centered.cols();
  if (n < 2) throw std::invalid_argument("principal_axes: need at least 2 rows");
  if (route == AxesRoute::automatic) route = (m > n) ? AxesRoute::gram : AxesRoute::covariance;

  EigenResult full;
  if (route == AxesRoute::covariance) {
    Matrix c(m, m);
    for (std::size_t r = 0; r < n; ++r) {
      auto row = centered.row(r);
      for (std::size_t i = 0; i < m; ++i) {
        const double xi = row[i];
        if (xi == 0.0) continue;
        auto dst = c.row(i);
        for (std::size_t j = i; j < m; ++j) dst[j] += xi * row[j];
      }
    }
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        c(i, j) *= scale;
        c(j, i) = c(i, j);
      }
    full = sym_eigen(c);
  } else {
    full = sym_eigen(gram(centered));
  }

  const double lmax = full.values.empty() ? 0.0 : full.values.front();
  std::size_t keep = 0;
  while (keep < full.values.size() && keep < max_count && lmax > 0.0 &&
         full.values[keep] > kRankEpsilon * lmax)
    ++keep;

  EigenResult out;
  out.sweeps = full.sweeps;
  out.values.assign(full.values.begin(), full.values.begin() + static_cast<std::ptrdiff_t>(keep));
  out.vectors = Matrix(m, keep);
  std::vector<double> v(m);
  for (std::size_t j = 0; j < keep; ++j) {
    if (route == AxesRoute::covariance) {
      for (std::size_t r = 0; r < m; ++r) v[r] = full.vectors(r, j);
    } else {
      // v = Xc^T u / ||Xc^T u||
      std::fill(v.begin(), v.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double ui = full.vectors(i, j);
        auto row = centered.row(i);
        for (std::size_t r = 0; r < m; ++r) v[r] += ui * row[r];
      }
      const double len = norm2(v);
      for (double& x : v) x /= len;
      canonicalize_sign(v);
    }
    for (std::size_t r = 0; r < m; ++r) out.vectors(r, j) = v[r];
  }
  return out;
}

std::vector<double> solve_shifted_psd(const EigenResult& eig, double shift,
                                      std::span<const double> b) {
  const std::size_t m = eig.vectors.rows();
  const std::size_t k = eig.vectors.cols();
  if (b.size() != m) throw std::invalid_argument("solve_shifted_psd: dimension mismatch");
  const double lmax = eig.values.empty() ? 0.0 : std::max(0.0, eig.values.front());
  const double floor = 1e-14 * std::max(lmax, 1e-300);
  std::vector<double> y(m, 0.0);
  std::vector<double> residual(b.begin(), b.end());
  for (std::size_t j = 0; j < k; ++j) {
    const double denom = std::max(eig.values[j], 0.0) + shift;
    if (!(denom > floor)) throw std::runtime_error("solve_shifted_psd: singular system");
    double proj = 0.0;
    for (std::size_t r = 0; r < m; ++r) proj += eig.vectors(r, j) * b[r];
    for (std::size_t r = 0; r < m; ++r) {
      y[r] += eig.vectors(r, j) * proj / denom;
      residual[r] -= eig.vectors(r, j) * proj;
    }
  }
  if (k < m) {
    // The basis only spans part of the space; the complement sees S = 0.
    if (!(shift > floor)) throw std::runtime_error("solve_shifted_psd: singular system");
    for (std::size_t r = 0; r < m; ++r) y[r] += residual[r] / shift;
  }
  return y;
}

}  // namespace seizure

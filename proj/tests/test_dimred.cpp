#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "seizure/dimred.hpp"

using namespace seizure;
using doctest::Approx;

namespace {

SubbandMatrix sub(Matrix x) { return {dwt::SubbandId::ca5, std::move(x)}; }

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Two-class Gaussian blobs in `dims` dimensions, the positive class shifted by `shift`.
std::pair<Matrix, std::vector<Label>> blobs(NormalSource& rng, std::size_t per_class,
                                            std::vector<double> shift, double spread = 1.0) {
  const std::size_t m = shift.size();
  Matrix x(2 * per_class, m);
  std::vector<Label> y(2 * per_class);
  for (std::size_t r = 0; r < 2 * per_class; ++r) {
    const bool pos = r >= per_class;
    y[r] = pos ? Label::positive : Label::negative;
    for (std::size_t c = 0; c < m; ++c) x(r, c) = spread * rng() + (pos ? shift[c] : 0.0);
  }
  return {x, y};
}

// Uniform on [-sqrt3, sqrt3]: zero mean, unit variance, negative kurtosis.
std::vector<double> uniform_source(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = std::sqrt(3.0) * (2.0 * unit_uniform(rng) - 1.0);
  return v;
}

void standardize(std::vector<double>& v) {
  double m = 0, s = 0;
  for (double x : v) m += x / static_cast<double>(v.size());
  for (double x : v) s += (x - m) * (x - m) / static_cast<double>(v.size() - 1);
  for (double& x : v) x = (x - m) / std::sqrt(s);
}

}  // namespace

TEST_CASE("method names") {
  CHECK(method_name(Method::ica) == "ica");
  CHECK(parse_method("LDA") == Method::lda);
  CHECK_FALSE(parse_method("svd").has_value());
}

TEST_CASE("fit_pca on points along the first axis") {
  const Matrix x = Matrix::from_rows({{1, 0}, {-1, 0}, {2, 0}, {-2, 0}});
  const ProjectionModel m = fit_pca(sub(x), 1);
  REQUIRE(m.output_dim() == 1);
  CHECK(m.w(0, 0) == Approx(1.0));
  CHECK(m.w(1, 0) == Approx(0.0));
  const Matrix p = transform(m, x);
  CHECK(p.col(0) == std::vector<double>{1, -1, 2, -2});
}

TEST_CASE("fit_pca with L = M reconstructs the centred data") {
  NormalSource rng(31);
  const Matrix x = oracle::random_matrix(rng, 12, 5);
  const ProjectionModel m = fit_pca(sub(x), 5);
  REQUIRE(m.output_dim() == 5);
  const Matrix back = transform(m, x) * m.w.transpose();
  const Matrix xc = center(x, column_means(x));
  CHECK(frobenius_norm(back - xc) <= 1e-8);
  CHECK(oracle::max_identity_error(m.w.transpose() * m.w) <= 1e-9);
}

TEST_CASE("fit_pca projections have descending diagonal covariance") {
  NormalSource rng(32);
  Matrix x = oracle::random_matrix(rng, 10, 6);
  for (std::size_t r = 0; r < 10; ++r) x(r, 1) += 2 * x(r, 0);
  const ProjectionModel m = fit_pca(sub(x), 3);
  const Matrix c = covariance(transform(m, x));
  const auto eig = sym_eigen(covariance(x));
  CHECK(oracle::max_offdiag(c) <= 1e-8);
  for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(c(j, j) - eig.values[j]) <= 1e-8);
  CHECK(c(0, 0) >= c(1, 1));
  CHECK(c(1, 1) >= c(2, 2));
}

TEST_CASE("fit_pca on wide data (more columns than rows)") {
  NormalSource rng(33);
  const Matrix x = oracle::random_matrix(rng, 8, 40);
  const ProjectionModel m = fit_pca(sub(x), 4);
  CHECK(m.output_dim() == 4);
  CHECK(oracle::max_identity_error(m.w.transpose() * m.w) <= 1e-9);
  CHECK(oracle::max_offdiag(covariance(transform(m, x))) <= 1e-8);
  const ProjectionModel all = fit_pca(sub(x), 20);
  CHECK(all.output_dim() == 7);
  CHECK_FALSE(all.warnings.empty());
}

TEST_CASE("reducers are unaffected by a constant shift of the rows") {
  NormalSource rng(34);
  auto [x, y] = blobs(rng, 30, {2, 0, 1, 0});
  Matrix shifted = x;
  for (std::size_t r = 0; r < shifted.rows(); ++r) shifted(r, 1) += 100, shifted(r, 3) -= 7;
  for (Method method : {Method::pca, Method::ica, Method::lda}) {
    const Matrix a = transform(fit(method, sub(x), y, 2, 5), x);
    const Matrix b = transform(fit(method, sub(shifted), y, 2, 5), shifted);
    CHECK(frobenius_norm(a - b) <= 1e-7 * std::max(1.0, frobenius_norm(a)));
  }
}

TEST_CASE("transform") {
  ProjectionModel m;
  m.mean = {0, 0};
  m.w = Matrix::identity(2);
  const Matrix x = Matrix::from_rows({{1, -1}, {-1, 1}});
  CHECK(transform(m, x) == x);
  CHECK_THROWS(transform(m, Matrix(2, 3)));
}

TEST_CASE("fit_ica with identity mixing returns the sources") {
  std::mt19937_64 rng(35);
  const std::size_t n = 2000;
  auto s1 = uniform_source(rng, n);
  std::vector<double> s2(n);
  for (std::size_t i = 0; i < n; ++i) s2[i] = std::sin(0.05 * static_cast<double>(i)) * std::sqrt(2.0);
  standardize(s1);
  standardize(s2);
  Matrix x(n, 2);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = s1[i], x(i, 1) = s2[i];
  const ProjectionModel m = fit_ica(sub(x), 2, 7);
  CHECK(m.converged);
  const Matrix y = transform(m, x);
  const auto y0 = y.col(0), y1 = y.col(1);
  const double direct = std::min(std::abs(correlation(y0, s1)), std::abs(correlation(y1, s2)));
  const double swapped = std::min(std::abs(correlation(y0, s2)), std::abs(correlation(y1, s1)));
  CHECK(std::max(direct, swapped) > 0.99);
}

TEST_CASE("fit_ica unmixes a sine and uniform noise") {
  std::mt19937_64 rng(36);
  const std::size_t n = 3000;
  std::vector<double> s1(n);
  for (std::size_t i = 0; i < n; ++i) s1[i] = std::sin(2 * std::numbers::pi * static_cast<double>(i) / 37.0);
  auto s2 = uniform_source(rng, n);
  standardize(s1);
  standardize(s2);
  const double a[2][2] = {{1, 0.5}, {0.5, 1}};
  Matrix x(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = a[0][0] * s1[i] + a[0][1] * s2[i];
    x(i, 1) = a[1][0] * s1[i] + a[1][1] * s2[i];
  }
  const ProjectionModel m = fit_ica(sub(x), 2, 3);
  // Rows of x are (A s)^T, so output = s^T A^T W: G = A^T W maps sources to outputs.
  Matrix at(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) at(i, j) = a[j][i];
  const Matrix g = at * m.w;
  const double diag = std::min(std::abs(g(0, 0)), std::abs(g(1, 1)));
  const double anti = std::min(std::abs(g(0, 1)), std::abs(g(1, 0)));
  const bool straight = diag > anti;
  const double off1 = straight ? std::abs(g(0, 1)) : std::abs(g(0, 0));
  const double off2 = straight ? std::abs(g(1, 0)) : std::abs(g(1, 1));
  CHECK(off1 < 0.05);
  CHECK(off2 < 0.05);
  CHECK(std::max(diag, anti) == Approx(1.0).epsilon(0.05));
}

TEST_CASE("fit_ica outputs are white and deterministic") {
  std::mt19937_64 urng(37);
  NormalSource rng(38);
  const std::size_t n = 500;
  Matrix s(n, 4);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, 0) = unit_uniform(urng) - 0.5;
    s(i, 1) = std::pow(unit_uniform(urng), 3);
    s(i, 2) = rng();
    s(i, 3) = (unit_uniform(urng) < 0.5 ? -1.0 : 1.0) + 0.1 * rng();
  }
  const Matrix mix = oracle::random_matrix(rng, 4, 6);
  const Matrix x = s * mix;
  const ProjectionModel a = fit_ica(sub(x), 3, 99);
  const ProjectionModel b = fit_ica(sub(x), 3, 99);
  CHECK(a.w == b.w);
  const Matrix c = covariance(transform(a, x));
  CHECK(oracle::max_identity_error(c) <= 1e-4);
  if (a.converged) CHECK(oracle::max_offdiag(c) < 1e-3);
  CHECK(to_json(a, "nested")["method"] == "ica");
}

TEST_CASE("fit_lda examples") {
  SUBCASE("isotropic blobs along the first axis") {
    NormalSource rng(39);
    // Symmetrised so the within-class scatter is exactly isotropic.
    std::vector<std::vector<double>> rows;
    std::vector<Label> y;
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 25; ++i) {
        const double u = rng(), v = rng();
        for (double sx : {-1.0, 1.0})
          for (double sy : {-1.0, 1.0}) {
            rows.push_back({4.0 * c + sx * u, sy * v});
            rows.push_back({4.0 * c + sx * v, sy * u});
            y.push_back(c ? Label::positive : Label::negative);
            y.push_back(c ? Label::positive : Label::negative);
          }
      }
    const ProjectionModel m = fit_lda(sub(Matrix::from_rows(rows)), y, 1);
    REQUIRE(m.output_dim() == 1);
    CHECK(m.w(0, 0) == Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(m.w(1, 0)) <= 1e-9);
  }
  SUBCASE("closed form S_w^-1 (mu+ - mu-)") {
    // Within-class scatter proportional to diag(2, 1), mean difference (1, 1).
    const double a = std::sqrt(2.0);
    std::vector<std::vector<double>> rows;
    std::vector<Label> y;
    for (int c = 0; c < 2; ++c) {
      for (auto p : std::vector<std::vector<double>>{{a, 0}, {-a, 0}, {0, 1}, {0, -1}}) {
        rows.push_back({p[0] + c, p[1] + c});
        y.push_back(c ? Label::positive : Label::negative);
      }
    }
    const ProjectionModel m = fit_lda(sub(Matrix::from_rows(rows)), y, 3);
    REQUIRE(m.output_dim() == 1);
    const double norm = std::sqrt(0.25 + 1.0);
    CHECK(m.w(0, 0) == Approx(0.5 / norm).epsilon(1e-5));
    CHECK(m.w(1, 0) == Approx(1.0 / norm).epsilon(1e-5));
  }
  SUBCASE("errors") {
    CHECK_THROWS(fit_lda(sub(Matrix(3, 2)), std::vector<Label>(3, Label::positive), 1));
    CHECK_THROWS(fit_lda(sub(Matrix::identity(4)), std::vector<Label>(4, Label::positive), 1));
  }
}

TEST_CASE("fit_lda beats 100 random directions on the Fisher ratio") {
  NormalSource rng(40);
  auto [x, y] = blobs(rng, 40, {1.0, -0.5, 0.3, 0.0, 0.8});
  for (std::size_t r = 0; r < x.rows(); ++r) x(r, 2) += 0.7 * x(r, 0);
  const ProjectionModel m = fit_lda(sub(x), y, 1);
  const auto w = m.w.col(0);
  const double best = oracle::fisher_ratio(x, y, w);
  NormalSource dirs(41);
  for (int t = 0; t < 100; ++t) {
    const auto d = oracle::random_vector(dirs, 5);
    CHECK(oracle::fisher_ratio(x, y, d) <= best * (1 + 1e-9));
  }
  // Positive class projects higher.
  const Matrix p = transform(m, x);
  double mp = 0, mn = 0;
  for (std::size_t r = 0; r < x.rows(); ++r) (y[r] == Label::positive ? mp : mn) += p(r, 0);
  CHECK(mp > mn);
}

TEST_CASE("fit_lda on wide data separates the training classes") {
  NormalSource rng(42);
  std::vector<double> shift(60, 0.0);
  shift[3] = 0.5;
  auto [x, y] = blobs(rng, 10, shift);
  const ProjectionModel m = fit_lda(sub(x), y, 1);
  const Matrix p = transform(m, x);
  double min_pos = 1e300, max_neg = -1e300;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    if (y[r] == Label::positive) min_pos = std::min(min_pos, p(r, 0));
    else max_neg = std::max(max_neg, p(r, 0));
  }
  CHECK(min_pos > max_neg);
}

TEST_CASE("lda_score") {
  SUBCASE("symmetric tie") {
    LdaScoreParams p;
    p.means = {std::vector<double>{-1, 2}, std::vector<double>{1, -2}};
    p.pooled_cov = Matrix::identity(2);
    p.priors = {0.5, 0.5};
    p.d = p.means;
    p.d0 = {-0.5 * 5, -0.5 * 5};
    const auto s = lda_score(p, std::vector<double>{0, 0});
    CHECK(s[0] == Approx(s[1]));
  }
  SUBCASE("one dimension") {
    const Matrix x = Matrix::from_rows({{-1}, {1}, {9}, {11}});
    const std::vector<Label> y{Label::negative, Label::negative, Label::positive, Label::positive};
    const LdaScoreParams p = fit_lda_score(x, y);
    CHECK(p.means[1][0] == Approx(10.0));
    const auto s = lda_score(p, std::vector<double>{1});
    CHECK(s[0] > s[1]);
    CHECK(lda_score_predict(p, std::vector<double>{1}) == Label::negative);
    CHECK(lda_score_predict(p, std::vector<double>{8}) == Label::positive);
  }
  SUBCASE("random 3-D instance against the literal formula") {
    NormalSource rng(43);
    auto [x, y] = blobs(rng, 15, {1, 0.5, -1});
    const LdaScoreParams p = fit_lda_score(x, y);
    // Explicit inverse by cofactors.
    const Matrix& s = p.pooled_cov;
    const double det = s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1)) -
                       s(0, 1) * (s(1, 0) * s(2, 2) - s(1, 2) * s(2, 0)) +
                       s(0, 2) * (s(1, 0) * s(2, 1) - s(1, 1) * s(2, 0));
    Matrix inv(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        inv(i, j) = (s(r0, c0) * s(r1, c1) - s(r0, c1) * s(r1, c0)) / det;
      }
    CHECK(oracle::max_identity_error(inv * s) <= 1e-10);
    NormalSource queries(44);
    for (int t = 0; t < 50; ++t) {
      const auto q = oracle::random_vector(queries, 3);
      double lit[2];
      for (int c = 0; c < 2; ++c) {
        const auto sinv_mu = inv * std::span<const double>(p.means[c]);
        lit[c] = -0.5 * dot(p.means[c], sinv_mu) + dot(sinv_mu, q) + std::log(p.priors[c]);
      }
      const auto got = lda_score(p, q);
      CHECK(got[0] == Approx(lit[0]).epsilon(1e-9));
      CHECK(got[1] == Approx(lit[1]).epsilon(1e-9));
      CHECK((lit[1] > lit[0]) == (lda_score_predict(p, q) == Label::positive));
    }
  }
}

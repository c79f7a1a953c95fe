#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "seizure/fusion.hpp"

using namespace seizure;
using doctest::Approx;

namespace {

using Vec = std::vector<double>;

std::vector<double> dmax(const std::array<Vec, 5>& v, MaxMode mode = MaxMode::elementwise) {
  return detail_max({v[0], v[1], v[2], v[3], v[4]}, mode);
}

}  // namespace

TEST_CASE("detail_max examples") {
  CHECK(dmax({Vec{1, 5}, Vec{2, 3}, Vec{0, 0}, Vec{4, 1}, Vec{2, 2}}) == Vec{4, 5});
  const Vec v{0.5, -2, 3};
  CHECK(dmax({v, v, v, v, v}) == v);
  CHECK(dmax({Vec{-3}, Vec{-1}, Vec{-2}, Vec{-5}, Vec{-4}}) == Vec{-1});
  CHECK_THROWS(dmax({Vec{1}, Vec{1, 2}, Vec{1}, Vec{1}, Vec{1}}));
}

TEST_CASE("detail_max is order independent") {
  NormalSource rng(51);
  std::array<Vec, 5> v;
  for (auto& x : v) x = oracle::random_vector(rng, 6);
  const Vec base = dmax(v);
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::array<Vec, 5> p;
    for (int i = 0; i < 5; ++i) p[i] = v[perm[i]];
    CHECK(dmax(p) == base);
  }
}

TEST_CASE("detail_max by norm picks one whole vector") {
  CHECK(dmax({Vec{1, 5}, Vec{2, 3}, Vec{0, 0}, Vec{4, 1}, Vec{-6, 0}}, MaxMode::by_norm) == Vec{-6, 0});
  CHECK(dmax({Vec{3, 4}, Vec{4, 3}, Vec{0, 0}, Vec{0, 0}, Vec{0, 0}}, MaxMode::by_norm) == Vec{3, 4});
  CHECK(parse_max_mode("by_norm") == MaxMode::by_norm);
  CHECK(max_mode_name(MaxMode::elementwise) == "elementwise");
}

TEST_CASE("fuse examples") {
  const Vec f = fuse(Vec{1, 2}, Vec{3, 4}, FusionWeights{});
  CHECK(f[0] == Approx(1.6));
  CHECK(f[1] == Approx(2.6));
  CHECK(fuse(Vec{1, 2}, Vec{3, 4}, FusionWeights{1, 0}) == Vec{1, 2});
  const Vec v{-1.5, 0.25, 8};
  for (double mu : {0.0, 0.3, 0.7, 1.0}) {
    const Vec g = fuse(v, v, FusionWeights{mu, 1 - mu});
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(g[i] == Approx(v[i]));
  }
  CHECK_THROWS(fuse(Vec{1}, Vec{1, 2}, FusionWeights{}));
}

TEST_CASE("fused value lies between its inputs") {
  NormalSource rng(52);
  for (int t = 0; t < 200; ++t) {
    const Vec a = oracle::random_vector(rng, 4), b = oracle::random_vector(rng, 4);
    const double mu = std::abs(rng()) / (1 + std::abs(rng()));
    const FusionWeights w{std::min(mu, 1.0), 1 - std::min(mu, 1.0)};
    const Vec f = fuse(a, b, w);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(f[j] >= std::min(a[j], b[j]) - 1e-12);
      CHECK(f[j] <= std::max(a[j], b[j]) + 1e-12);
    }
  }
}

TEST_CASE("weight validation") {
  CHECK_NOTHROW(FusionWeights{}.validate());
  CHECK_THROWS_WITH(FusionWeights({0.6, 0.5}).validate(), doctest::Contains("weights must sum to 1"));
  CHECK_THROWS(FusionWeights({1.5, -0.5}).validate());
}

TEST_CASE("fuse_features truncates to the shortest subband") {
  std::array<Matrix, 6> f;
  for (std::size_t s = 0; s < 5; ++s) f[s] = Matrix(2, 3, static_cast<double>(s));
  f[5] = Matrix::from_rows({{10}, {20}});
  const Matrix fused = fuse_features(f, FusionWeights{});
  REQUIRE(fused.cols() == 1);
  CHECK(fused(0, 0) == Approx(0.7 * 10 + 0.3 * 4));
  CHECK(fused(1, 0) == Approx(0.7 * 20 + 0.3 * 4));
  f[2] = Matrix(3, 3);
  CHECK_THROWS(fuse_features(f, FusionWeights{}));
}

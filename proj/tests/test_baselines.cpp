#include <doctest.h>

#include <cmath>
#include <random>

#include "dualfgm/baselines.hpp"
#include "dualfgm/error.hpp"
#include "oracles.hpp"

using namespace dualfgm;

namespace {

SubgradOracle abs_oracle() {
  SubgradOracle o;
  o.dimension = 1;
  o.bound = 1.0;
  o.value = [](std::span<const double> v) { return std::abs(v[0]); };
  o.subgradient = [](std::span<const double> v, std::span<double> s) {
    s[0] = v[0] > 0 ? 1.0 : (v[0] < 0 ? -1.0 : 0.0);
  };
  return o;
}

FirstOrderOracle half_square() {
  FirstOrderOracle o;
  o.dimension = 1;
  o.lipschitz = 1.0;
  o.value = [](std::span<const double> v) { return 0.5 * v[0] * v[0]; };
  o.gradient = [](std::span<const double> v, std::span<double> g) { g[0] = v[0]; };
  return o;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("subgradient method on |v|") {
  std::vector<double> seen;
  const auto r = subgradient_solve(abs_oracle(), Vector{1.0}, 4, 1.0,
                                   [&](std::int64_t, std::span<const double> x) {
                                     seen.push_back(x[0]);
                                   });
  CHECK(seen == std::vector<double>{1.0, 0.5, 0.0, 0.0, 0.0});
  CHECK(r.x_bar[0] == 0.375);
  CHECK(r.f_bar == 0.375);
  CHECK(r.f_bar <= 0.5);
}

TEST_CASE("subgradient method from a smooth minimizer") {
  SubgradOracle o;
  o.dimension = 2;
  o.bound = 3.0;
  o.value = [](std::span<const double> v) { return 0.5 * (v[0] * v[0] + v[1] * v[1]); };
  o.subgradient = [](std::span<const double> v, std::span<double> s) {
    s[0] = v[0];
    s[1] = v[1];
  };
  const auto r = subgradient_solve(o, Vector{0.0, 0.0}, 10, 1.0);
  CHECK(r.x_bar == Vector{0.0, 0.0});
}

TEST_CASE("subgradient bound on a half square") {
  SubgradOracle o;
  o.dimension = 1;
  o.bound = std::sqrt(2.0);  // |v| <= sqrt(2) R on the sqrt(2) R ball, R = 1
  o.value = [](std::span<const double> v) { return 0.5 * v[0] * v[0]; };
  o.subgradient = [](std::span<const double> v, std::span<double> s) { s[0] = v[0]; };
  for (std::int64_t n : {1, 2, 5, 17, 100, 1000}) {
    const auto r = subgradient_solve(o, Vector{1.0}, n, 1.0);
    CHECK(r.f_bar <= o.bound / std::sqrt(static_cast<double>(n)) + 1e-12);
  }
}

TEST_CASE("subgradient iterates stay in the sqrt(2) ball") {
  for (double x0 : {-3.0, 0.7, 5.0}) {
    for (std::int64_t n : {3, 10, 64}) {
      const double r0 = std::abs(x0);
      subgradient_solve(abs_oracle(), Vector{x0}, n, r0,
                        [&](std::int64_t, std::span<const double> x) {
                          CHECK(std::abs(x[0]) <= std::sqrt(2.0) * r0 + 1e-9);
                        });
    }
  }
}

TEST_CASE("gradient descent examples") {
  std::vector<double> seen;
  const auto r = gd_solve(half_square(), Vector{1.0}, 3,
                          [&](std::int64_t, std::span<const double> x) { seen.push_back(x[0]); });
  CHECK(seen == std::vector<double>{1.0, 0.5, 0.25, 0.125});
  CHECK(r.x_bar[0] == doctest::Approx(1.75 / 3).epsilon(1e-15));
  const auto still = gd_solve(half_square(), Vector{0.0}, 5);
  CHECK(still.x_bar[0] == 0.0);
}

TEST_CASE("gradient descent validates arguments") {
  CHECK_THROWS_AS(gd_solve(half_square(), Vector{1.0}, 0), UsageError);
  CHECK_THROWS_AS(gd_solve(half_square(), Vector{1.0, 2.0}, 3), UsageError);
  CHECK_THROWS_AS(subgradient_solve(abs_oracle(), Vector{1.0}, 3, 0.0), UsageError);
}

TEST_CASE("gradient descent rejects diverging iterates") {
  FirstOrderOracle o = half_square();
  o.gradient = [](std::span<const double>, std::span<double> g) { g[0] = INFINITY; };
  CHECK_THROWS_AS(gd_solve(o, Vector{1.0}, 3), NumericError);
}

TEST_CASE("gradient descent rate on seeded least squares") {
  std::mt19937_64 rng(31);
  const std::size_t n = 8;
  const auto b = oracle::gaussian_dense(rng, n, n);
  const auto c = oracle::gaussian_vector(rng, n);
  const auto gram = oracle::gram_cols(b, n, n);
  const double l = oracle::jacobi_eigenvalues(gram, n).back();
  const auto vstar = oracle::solve(b, c, n);
  FirstOrderOracle o;
  o.dimension = n;
  o.lipschitz = l;
  o.value = [&](std::span<const double> v) {
    const auto r = oracle::dense_matvec(b, n, n, v);
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += 0.5 * (r[i] - c[i]) * (r[i] - c[i]);
    return s;
  };
  o.gradient = [&](std::span<const double> v, std::span<double> g) {
    auto r = oracle::dense_matvec(b, n, n, v);
    for (std::size_t i = 0; i < n; ++i) r[i] -= c[i];
    const auto t = oracle::dense_rmatvec(b, n, n, r);
    std::copy(t.begin(), t.end(), g.begin());
  };
  const Vector x0(n, 0.0);
  const double r0 = oracle::norm(vstar);
  const double fstar = o.value(vstar);
  double prev = INFINITY;
  const auto res = gd_solve(o, x0, 200, [&](std::int64_t, std::span<const double> x) {
    const double d = oracle::dist(x, vstar);
    CHECK(d <= prev + 1e-9);
    prev = d;
    Vector g(n);
    o.gradient(x, g);
    CHECK(oracle::inner(g, g) / (2 * l) <= o.value(x) - fstar + 1e-9);
  });
  CHECK(res.f_bar - fstar <= 2 * l * r0 * r0 / 200 + 1e-9);
}

}

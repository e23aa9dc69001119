#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

Dense dense_matvec(const Dense& a, std::size_t rows, std::size_t cols, std::span<const double> x) {
  Dense out(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[i] += a[i * cols + j] * x[j];
  return out;
}

Dense dense_rmatvec(const Dense& a, std::size_t rows, std::size_t cols, std::span<const double> y) {
  Dense out(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += a[i * cols + j] * y[i];
  return out;
}

Dense gram_cols(const Dense& a, std::size_t rows, std::size_t cols) {
  Dense g(cols * cols, 0.0);
  for (std::size_t p = 0; p < cols; ++p)
    for (std::size_t q = 0; q < cols; ++q)
      for (std::size_t i = 0; i < rows; ++i) g[p * cols + q] += a[i * cols + p] * a[i * cols + q];
  return g;
}

Dense gram_rows(const Dense& a, std::size_t rows, std::size_t cols) {
  Dense g(rows * rows, 0.0);
  for (std::size_t p = 0; p < rows; ++p)
    for (std::size_t q = 0; q < rows; ++q)
      for (std::size_t j = 0; j < cols; ++j) g[p * rows + q] += a[p * cols + j] * a[q * cols + j];
  return g;
}

std::vector<double> jacobi_eigenvalues(Dense s, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return s[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> solve(Dense a, std::vector<double> b, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) throw std::runtime_error("singular system");
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * x[k];
    x[i] = s / a[i * n + i];
  }
  return x;
}

std::vector<double> central_gradient(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> y, double h) {
  std::vector<double> g(y.size());
  std::vector<double> p(y.begin(), y.end());
  for (std::size_t i = 0; i < y.size(); ++i) {
    p[i] = y[i] + h;
    const double fp = f(p);
    p[i] = y[i] - h;
    const double fm = f(p);
    p[i] = y[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

std::vector<double> pagerank_power(const dualfgm::SparseMatrix& p, std::int64_t steps) {
  const std::size_t n = p.rows();
  const auto t = p.triplets();
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::int64_t s = 0; s < steps; ++s) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& e : t) next[e.col] += e.value * x[e.row];
    for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 * (x[i] + next[i]);
  }
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& e : x) e /= sum;
  return x;
}

std::vector<double> project_simplex(std::span<const double> v) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

std::vector<double> elp_inner_max(const Dense& a, std::size_t rows, std::size_t cols,
                                  std::span<const double> y, std::int64_t iters) {
  const auto c = dense_rmatvec(a, rows, cols, y);  // objective: -<c, x> - sum x ln x
  std::vector<double> x(cols, 1.0 / static_cast<double>(cols));
  std::vector<double> g(cols), trial(cols);
  for (std::int64_t it = 0; it < iters; ++it) {
    for (std::size_t k = 0; k < cols; ++k) g[k] = -c[k] - std::log(x[k]) - 1.0;
    // The Hessian of the entropy is diag(1/x); a step of min(x)/2 keeps the
    // ascent stable, halving further if the projection touches the boundary.
    double h = 0.5 * *std::min_element(x.begin(), x.end());
    for (;;) {
      for (std::size_t k = 0; k < cols; ++k) trial[k] = x[k] + h * g[k];
      trial = project_simplex(trial);
      if (*std::min_element(trial.begin(), trial.end()) > 0.0) break;
      h *= 0.5;
    }
    x.swap(trial);
  }
  return x;
}

double inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
double norm(std::span<const double> a) { return std::sqrt(inner(a, a)); }
double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Dense uniform_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Dense a(rows * cols);
  for (double& e : a) e = u(rng);
  return a;
}

Dense gaussian_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g;
  Dense a(rows * cols);
  for (double& e : a) e = g(rng);
  return a;
}

std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  return gaussian_dense(rng, n, 1);
}

std::vector<double> simplex_point(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(n);
  for (double& v : x) v = e(rng);
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v /= s;
  return x;
}

dualfgm::SparseMatrix random_stochastic(std::mt19937_64& rng, std::size_t n, std::size_t per_row) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  std::vector<dualfgm::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> targets{(i + 1) % n};
    while (targets.size() < per_row) targets.insert(pick(rng));
    std::vector<double> weights;
    for (std::size_t k = 0; k < targets.size(); ++k) weights.push_back(w(rng));
    const double s = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::size_t k = 0;
    for (std::size_t j : targets) {
      t.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), weights[k++] / s});
    }
  }
  const auto nn = static_cast<std::int64_t>(n);
  return dualfgm::SparseMatrix::from_triplets(nn, nn, std::move(t));
}

dualfgm::SparseMatrix cycle(std::size_t n) {
  std::vector<dualfgm::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>((i + 1) % n), 1.0});
  }
  const auto nn = static_cast<std::int64_t>(n);
  return dualfgm::SparseMatrix::from_triplets(nn, nn, std::move(t));
}

}  // namespace oracle

// Copyright 2026 The tlsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference solvers shared by the test binaries.

#ifndef TLSUM_TESTS_ORACLES_H_
#define TLSUM_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <vector>

namespace tlsum::testing {

using Matrix = std::vector<std::vector<double>>;

struct Standardized {
  Matrix z;
  std::vector<double> mean, sd;
};

inline Standardized standardize(const Matrix& x) {
  const size_t n = x.size(), d = x[0].size();
  Standardized s{Matrix(n, std::vector<double>(d)), std::vector<double>(d), std::vector<double>(d)};
  for (size_t j = 0; j < d; ++j) {
    double m = 0;
    for (size_t i = 0; i < n; ++i) m += x[i][j];
    m /= static_cast<double>(n);
    double v = 0;
    for (size_t i = 0; i < n; ++i) v += (x[i][j] - m) * (x[i][j] - m);
    s.mean[j] = m;
    s.sd[j] = std::sqrt(v / static_cast<double>(n));
    for (size_t i = 0; i < n; ++i) s.z[i][j] = (x[i][j] - m) / s.sd[j];
  }
  return s;
}

// Solves the ridge normal equations with an unpenalized bias by Gauss-Jordan
// elimination with partial pivoting. Returns (w..., b).
inline std::vector<double> ridge_oracle(const Matrix& z, const std::vector<double>& y, double l2) {
  const size_t n = z.size(), d = z[0].size(), m = d + 1;
  Matrix a(m, std::vector<double>(m + 1, 0.0));
  auto col = [&](size_t i, size_t j) { return j < d ? z[i][j] : 1.0; };
  for (size_t r = 0; r < m; ++r) {
    for (size_t c = 0; c < m; ++c) {
      double s = 0;
      for (size_t i = 0; i < n; ++i) s += col(i, r) * col(i, c);
      a[r][c] = s / static_cast<double>(n) + (r == c && r < d ? l2 : 0.0);
    }
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += col(i, r) * y[i];
    a[r][m] = s / static_cast<double>(n);
  }
  for (size_t p = 0; p < m; ++p) {
    size_t best = p;
    for (size_t r = p + 1; r < m; ++r) {
      if (std::abs(a[r][p]) > std::abs(a[best][p])) best = r;
    }
    std::swap(a[p], a[best]);
    double piv = a[p][p];
    for (double& v : a[p]) v /= piv;
    for (size_t r = 0; r < m; ++r) {
      if (r == p) continue;
      double f = a[r][p];
      for (size_t c = 0; c <= m; ++c) a[r][c] -= f * a[p][c];
    }
  }
  std::vector<double> out(m);
  for (size_t r = 0; r < m; ++r) out[r] = a[r][m];
  return out;
}

// Plain full-batch gradient descent on the regularized mean log-loss, run
// until the gradient vanishes. Returns (w..., b).
inline std::vector<double> logistic_oracle(const Matrix& z, const std::vector<double>& y, double l2) {
  const size_t n = z.size(), d = z[0].size();
  std::vector<double> theta(d + 1, 0.0), grad(d + 1);
  const double lr = 1.0;
  for (int it = 0; it < 2000000; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
      double s = theta[d];
      for (size_t j = 0; j < d; ++j) s += theta[j] * z[i][j];
      double r = 1.0 / (1.0 + std::exp(-s)) - y[i];
      for (size_t j = 0; j < d; ++j) grad[j] += r * z[i][j];
      grad[d] += r;
    }
    double gmax = 0;
    for (size_t j = 0; j <= d; ++j) {
      grad[j] = grad[j] / static_cast<double>(n) + (j < d ? l2 * theta[j] : 0.0);
      gmax = std::max(gmax, std::abs(grad[j]));
    }
    if (gmax < 1e-14) break;
    for (size_t j = 0; j <= d; ++j) theta[j] -= lr * grad[j];
  }
  return theta;
}

// Dense Markov clustering on an n-node graph given as (a, b, weight) edges.
// Returns the connected components of the final nonzero pattern, each
// ascending, ordered by their smallest node.
struct DenseEdge {
  size_t a, b;
  double w;
};

inline std::vector<std::vector<size_t>> dense_mcl(size_t n, const std::vector<DenseEdge>& edges,
                                                  double inflation = 2.0, int expansion = 2,
                                                  double prune = 1e-5, double tol = 1e-8,
                                                  int max_iter = 100) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  for (const auto& e : edges) {
    m[e.a][e.b] += e.w;
    m[e.b][e.a] += e.w;
  }
  auto normalize = [&](Matrix& x) {
    for (size_t c = 0; c < n; ++c) {
      double s = 0;
      for (size_t r = 0; r < n; ++r) s += x[r][c];
      if (s > 0) {
        for (size_t r = 0; r < n; ++r) x[r][c] /= s;
      }
    }
  };
  auto multiply = [&](const Matrix& x, const Matrix& y) {
    Matrix z(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
      for (size_t k = 0; k < n; ++k) {
        if (x[i][k] == 0.0) continue;
        for (size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
      }
    }
    return z;
  };
  normalize(m);
  for (int it = 0; it < max_iter; ++it) {
    Matrix next = m;
    for (int e = 1; e < expansion; ++e) next = multiply(next, m);
    for (auto& row : next) {
      for (double& v : row) v = std::pow(v, inflation);
    }
    normalize(next);
    double change = 0;
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) {
        if (next[r][c] < prune) next[r][c] = 0.0;
        change = std::max(change, std::abs(next[r][c] - m[r][c]));
      }
    }
    m = std::move(next);
    if (change < tol) break;
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<size_t>> out;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = static_cast<int>(out.size());
    std::vector<size_t> stack{s}, members;
    while (!stack.empty()) {
      size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (size_t v = 0; v < n; ++v) {
        if ((m[u][v] != 0.0 || m[v][u] != 0.0) && comp[v] < 0) {
          comp[v] = comp[s];
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace tlsum::testing

#endif  // TLSUM_TESTS_ORACLES_H_

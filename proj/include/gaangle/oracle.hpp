#pragma once

// Principal angles by the matrix route: orthonormal bases by Gram-Schmidt,
// then the SVD of the array of mutual inner products. Nothing here touches
// the multivector code, so agreement with the angle engine is a genuine
// two-implementation check. Cost is O(r^3) in the subspace dimension.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gaangle/errors.hpp"

namespace gaangle::oracle {

using Vector = std::vector<double>;

// Dense row-major matrix.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0.0) {}

  double& operator()(int i, int j) { return data[std::size_t(i) * cols + j]; }
  double operator()(int i, int j) const {
    return data[std::size_t(i) * cols + j];
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

struct Svd {
  Matrix u;  // rows x k, orthonormal columns
  Vector sigma;  // k = min(rows, cols) values, descending
  Matrix v;  // cols x k, orthonormal columns
};

struct PrincipalPairs {
  Vector cosines;  // descending, in [0, 1]
  Vector angles;   // ascending, matching cosines
  std::vector<Vector> a_vectors;
  std::vector<Vector> b_vectors;
};

inline constexpr double kIntersectionTolerance = 1e-9;

namespace detail {

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  }
  return t;
}

// One-sided (Hestenes) Jacobi on a matrix with rows >= cols.
inline Svd jacobi_tall(Matrix a) {
  const int m = a.rows, n = a.cols;
  Matrix v = Matrix::identity(n);
  constexpr double eps = 2.220446049250313e-16;

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (int p = 0; p + 1 < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < m; ++i) {
          const double x = a(i, p), y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        for (int i = 0; i < n; ++i) {
          const double x = v(i, p), y = v(i, q);
          v(i, p) = c * x - s * y;
          v(i, q) = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  Vector sigma(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += a(i, j) * a(i, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return sigma[x] > sigma[y]; });

  Svd out{Matrix(m, n), Vector(n), Matrix(n, n)};
  const double largest = n > 0 ? sigma[order[0]] : 0.0;
  std::vector<Vector> u_cols;
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    out.sigma[k] = sigma[j];
    for (int i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    Vector col(m, 0.0);
    if (sigma[j] > 1e-300 && sigma[j] > eps * largest * m) {
      for (int i = 0; i < m; ++i) col[i] = a(i, j) / sigma[j];
    } else {
      // Null direction: complete with a unit vector orthogonal to the rest.
      for (int e = 0; e < m; ++e) {
        Vector trial(m, 0.0);
        trial[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& w : u_cols) {
            const double c = dot(w, trial);
            for (int i = 0; i < m; ++i) trial[i] -= c * w[i];
          }
        }
        const double len = std::sqrt(dot(trial, trial));
        if (len > 0.5) {
          for (double& x : trial) x /= len;
          col = trial;
          break;
        }
      }
    }
    u_cols.push_back(col);
    for (int i = 0; i < m; ++i) out.u(i, k) = col[i];
  }
  return out;
}

}  // namespace detail

// M = U diag(sigma) V^T with sigma descending and nonnegative.
inline Svd svd_small(const Matrix& m) {
  if (m.rows == 0 || m.cols == 0) throw InvalidInput("empty matrix");
  if (m.rows >= m.cols) return detail::jacobi_tall(m);
  Svd t = detail::jacobi_tall(detail::transpose(m));
  return Svd{t.v, t.sigma, t.u};
}

// Orthonormal basis of the span (modified Gram-Schmidt, applied twice).
inline std::vector<Vector> orthonormal_basis(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw InvalidInput("empty spanning set");
  std::vector<Vector> basis;
  for (const auto& original : vectors) {
    Vector v = original;
    const double length = std::sqrt(detail::dot(v, v));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : basis) {
        const double c = detail::dot(w, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * w[i];
      }
    }
    const double residual = std::sqrt(detail::dot(v, v));
    if (length == 0.0 || residual < 1e-10 * length) {
      throw DegenerateSpan("spanning vectors are linearly dependent");
    }
    for (double& x : v) x /= residual;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Principal pairs of two orthonormal bases; min(rA, rB) of them.
inline PrincipalPairs principal_angles(const std::vector<Vector>& basis_a,
                                       const std::vector<Vector>& basis_b) {
  if (basis_a.empty() || basis_b.empty()) throw InvalidInput("empty basis");
  const int ra = static_cast<int>(basis_a.size());
  const int rb = static_cast<int>(basis_b.size());
  const std::size_t n = basis_a.front().size();

  Matrix cross(ra, rb);
  for (int i = 0; i < ra; ++i) {
    for (int j = 0; j < rb; ++j) cross(i, j) = detail::dot(basis_a[i], basis_b[j]);
  }
  const Svd svd = svd_small(cross);

  PrincipalPairs out;
  const int k = std::min(ra, rb);
  for (int p = 0; p < k; ++p) {
    Vector a(n, 0.0), b(n, 0.0);
    for (int i = 0; i < ra; ++i) {
      for (std::size_t x = 0; x < n; ++x) a[x] += svd.u(i, p) * basis_a[i][x];
    }
    for (int j = 0; j < rb; ++j) {
      for (std::size_t x = 0; x < n; ++x) b[x] += svd.v(j, p) * basis_b[j][x];
    }
    const double sigma = std::clamp(svd.sigma[p], 0.0, 1.0);
    double angle = std::acos(sigma);
    if (sigma > 0.99) {
      // acos loses digits near 1; use the length of b's component off a.
      const double c = detail::dot(a, b);
      Vector off = b;
      for (std::size_t x = 0; x < n; ++x) off[x] -= c * a[x];
      angle = std::asin(std::min(1.0, std::sqrt(detail::dot(off, off))));
    }
    out.cosines.push_back(sigma);
    out.angles.push_back(angle);
    out.a_vectors.push_back(std::move(a));
    out.b_vectors.push_back(std::move(b));
  }
  return out;
}

// Number of principal angles equal to zero: cosines >= 1 - tol.
inline int intersection_dimension(const std::vector<Vector>& basis_a,
                                  const std::vector<Vector>& basis_b,
                                  double tol = kIntersectionTolerance) {
  const auto pairs = principal_angles(basis_a, basis_b);
  return static_cast<int>(std::count_if(pairs.cosines.begin(),
                                        pairs.cosines.end(),
                                        [&](double c) { return c >= 1.0 - tol; }));
}

// Number of principal angles equal to pi/2: cosines <= tol.
inline int perpendicular_dimension(const PrincipalPairs& pairs,
                                   double tol = kIntersectionTolerance) {
  return static_cast<int>(std::count_if(pairs.cosines.begin(),
                                        pairs.cosines.end(),
                                        [&](double c) { return c <= tol; }));
}

}  // namespace gaangle::oracle

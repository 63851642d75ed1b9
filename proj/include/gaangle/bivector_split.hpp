#pragma once

// Split of a Euclidean bivector into mutually orthogonal, commuting 2-blades.

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaangle/errors.hpp"
#include "gaangle/multivector.hpp"

namespace gaangle {

struct BivectorPart {
  double beta;      // > 0
  Multivector plane;  // unit 2-blade, plane * plane = -1
};

namespace detail {

using SquareMatrix = std::vector<std::vector<double>>;

struct SymmetricEigen {
  std::vector<double> values;
  SquareMatrix vectors;  // vectors[k] is the eigenvector of values[k]
};

// Cyclic Jacobi rotations on a symmetric matrix.
inline SymmetricEigen jacobi_eigen(SquareMatrix a) {
  const std::size_t n = a.size();
  SquareMatrix v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    }
    if (off <= 1e-32 * total || off == 0.0) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[k][k];
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i][k];
  }
  return out;
}

inline void remove_component(std::vector<double>& x,
                             const std::vector<double>& unit) {
  double c = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) c += x[i] * unit[i];
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * unit[i];
}

inline double length(const std::vector<double>& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

}  // namespace detail

// F = sum beta_k i_k with orthonormal planes i_k, beta_k descending. Parts
// with beta_k <= zero_tol are dropped; a negative zero_tol selects
// 1e-12 * |F|.
//
// The planes are the invariant 2-planes of the skew map x -> x _| F: the
// dominant eigenvector u of the symmetric -F^2 (restricted to the complement
// of the planes found so far) and its image u _| F = beta v span i_k = u ^ v.
inline std::vector<BivectorPart> bivector_split(const Multivector& bivector,
                                                double zero_tol = -1.0) {
  const Signature sig = bivector.signature();
  if (!sig.is_euclidean()) {
    throw NonEuclidean("bivector split needs a Euclidean signature");
  }
  const double total = coeff_norm(bivector);
  if (coeff_norm(bivector - grade_projection(bivector, 2)) > 1e-12 * total) {
    throw GradeMismatch("bivector split of a non-bivector");
  }
  if (zero_tol < 0.0) zero_tol = 1e-12 * total;
  std::vector<BivectorPart> parts;
  if (total == 0.0) return parts;

  const int n = sig.n();
  // skew[i][j] = (e_i _| F)_j
  detail::SquareMatrix skew(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double f = bivector[(BladeMask{1} << i) | (BladeMask{1} << j)];
      skew[i][j] = f;
      skew[j][i] = -f;
    }
  }
  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) w[j] += x[i] * skew[i][j];
    }
    return w;
  };

  std::vector<std::vector<double>> used;  // orthonormal basis of found planes
  while (static_cast<int>(used.size()) + 2 <= n) {
    // P S P with S = skew skew^T and P the projector off `used`.
    detail::SquareMatrix projector(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) projector[i][i] = 1.0;
    for (const auto& u : used) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) projector[i][j] -= u[i] * u[j];
      }
    }
    detail::SquareMatrix s(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) s[i][j] += skew[i][k] * skew[j][k];
      }
    }
    detail::SquareMatrix ps(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) ps[i][j] += projector[i][k] * s[k][j];
      }
    }
    detail::SquareMatrix psp(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) psp[i][j] += ps[i][k] * projector[k][j];
      }
    }

    const auto eig = detail::jacobi_eigen(std::move(psp));
    const auto top = std::max_element(eig.values.begin(), eig.values.end()) -
                     eig.values.begin();
    std::vector<double> u = eig.vectors[top];
    for (const auto& w : used) detail::remove_component(u, w);
    const double ulen = detail::length(u);
    if (ulen < 0.5) break;
    for (double& c : u) c /= ulen;

    std::vector<double> v = apply(u);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& w : used) detail::remove_component(v, w);
      detail::remove_component(v, u);
    }
    const double beta = detail::length(v);
    if (beta <= zero_tol) break;
    for (double& c : v) c /= beta;

    parts.push_back({beta, Multivector::vector(sig, u) ^ Multivector::vector(sig, v)});
    used.push_back(std::move(u));
    used.push_back(std::move(v));
  }

  std::stable_sort(parts.begin(), parts.end(),
                   [](const BivectorPart& a, const BivectorPart& b) {
                     return a.beta > b.beta;
                   });
  return parts;
}

}  // namespace gaangle

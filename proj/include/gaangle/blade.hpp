#pragma once

// Blades (simple k-vectors) as representatives of k-dimensional subspaces.

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "gaangle/errors.hpp"
#include "gaangle/multivector.hpp"

namespace gaangle {

inline constexpr double kDefaultTolerance = 1e-9;
// A spanning vector is dependent when its Gram-Schmidt residual falls below
// this fraction of its original length.
inline constexpr double kDependenceTolerance = 1e-10;

struct OrthogonalFactorization {
  double magnitude = 0.0;
  std::vector<std::vector<double>> factors;  // orthonormal, in product order
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns false as
// soon as a vector's residual drops below kDependenceTolerance of its length.
inline bool orthonormalize(std::vector<std::vector<double>>& vs) {
  for (std::size_t k = 0; k < vs.size(); ++k) {
    auto& v = vs[k];
    const double original = std::sqrt(dot(v, v));
    if (original == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        const double c = dot(vs[j], v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * vs[j][i];
      }
    }
    const double residual = std::sqrt(dot(v, v));
    if (residual < kDependenceTolerance * original) return false;
    for (double& x : v) x /= residual;
  }
  return true;
}

// Factors a nonzero grade-k element assumed simple, using the Euclidean
// metric on its coefficients: repeatedly project the basis vectors of the
// dominant basis blade onto the blade and divide them out.
inline OrthogonalFactorization factor_euclidean(const Multivector& blade,
                                                int grade) {
  const Multivector x = euclidean_view(blade);
  const Signature sig = x.signature();
  OrthogonalFactorization out;
  out.magnitude = norm(x);
  if (out.magnitude == 0.0) throw DegenerateSpan("cannot factor a zero blade");

  BladeMask dominant = 0;
  double best = -1.0;
  for (BladeMask m = 0; m < x.size(); ++m) {
    if (grade_of(m) == grade && std::abs(x[m]) > best) {
      best = std::abs(x[m]);
      dominant = m;
    }
  }

  Multivector current = x / out.magnitude;
  std::vector<int> axes;
  for (int i = 0; i < sig.n(); ++i) {
    if (dominant & (BladeMask{1} << i)) axes.push_back(i);
  }
  for (std::size_t k = 0; k + 1 < axes.size(); ++k) {
    const Multivector e = Multivector::basis(sig, BladeMask{1} << axes[k]);
    const double sq = norm_squared(current);
    Multivector f = left_contraction(left_contraction(e, current),
                                     reverse(current) / sq);
    f = f / norm(f);
    out.factors.push_back(f.vector_part());
    current = left_contraction(f, current);
  }
  if (grade > 0) out.factors.push_back(current.vector_part());

  if (!orthonormalize(out.factors)) {
    throw NotABlade("factorization produced dependent factors");
  }

  Multivector product = Multivector::scalar(sig, 1.0);
  for (const auto& f : out.factors) product = product * Multivector::vector(sig, f);
  if (grade > 0 && scalar_product(product, reverse(x)) < 0.0) {
    for (double& c : out.factors.front()) c = -c;
  }
  return out;
}

inline int dominant_grade(const Multivector& x, double tol) {
  const double total = coeff_norm(x);
  int found = -1;
  for (const auto& [k, part] : graded_parts(x)) {
    if (coeff_norm(part) > tol * total) {
      if (found >= 0) return -1;
      found = k;
    }
  }
  return found;
}

}  // namespace detail

// True iff `mv` is (within tol, relative) a nonzero simple k-vector, k >= 1.
// Simplicity does not depend on the metric, so the test runs on the
// Euclidean reinterpretation of the coefficients; this also admits null
// blades of Cl(p,q).
inline bool is_blade(const Multivector& mv, double tol = kDefaultTolerance) {
  const double total = coeff_norm(mv);
  if (total == 0.0) return false;
  const int k = detail::dominant_grade(mv, tol);
  if (k < 1) return false;

  const Multivector x = euclidean_view(grade_projection(mv, k));
  const Multivector square = x * reverse(x);
  const double scalar = square[0];
  if (coeff_norm(square - Multivector::scalar(x.signature(), scalar)) >
      tol * scalar) {
    return false;
  }
  try {
    const auto fact = detail::factor_euclidean(x, k);
    Multivector rebuilt = Multivector::scalar(x.signature(), fact.magnitude);
    for (const auto& f : fact.factors) {
      rebuilt = rebuilt * Multivector::vector(x.signature(), f);
    }
    return coeff_norm(rebuilt - x) <= tol * coeff_norm(x);
  } catch (const Error&) {
    return false;
  }
}

class Blade {
 public:
  // Wedge of the spanning vectors. Throws DegenerateSpan when they are
  // linearly dependent.
  static Blade from_vectors(Signature sig,
                            std::span<const std::vector<double>> vectors) {
    if (vectors.empty()) throw InvalidInput("empty spanning set");
    if (static_cast<int>(vectors.size()) > sig.n()) {
      throw DegenerateSpan(std::to_string(vectors.size()) +
                           " vectors cannot be independent in dimension " +
                           std::to_string(sig.n()));
    }
    std::vector<std::vector<double>> check(vectors.begin(), vectors.end());
    for (const auto& v : check) {
      if (static_cast<int>(v.size()) != sig.n()) {
        throw InvalidInput("spanning vector of wrong dimension");
      }
      for (double c : v) {
        if (!std::isfinite(c)) throw InvalidInput("non-finite spanning vector");
      }
    }
    if (!detail::orthonormalize(check)) {
      throw DegenerateSpan("spanning vectors are linearly dependent");
    }
    Multivector mv = Multivector::scalar(sig, 1.0);
    for (const auto& v : vectors) mv = mv ^ Multivector::vector(sig, v);
    const int k = static_cast<int>(vectors.size());
    return Blade(std::move(mv), k);
  }

  static Blade from_multivector(const Multivector& mv,
                                double tol = kDefaultTolerance) {
    if (!is_blade(mv, tol)) throw NotABlade("multivector is not a blade");
    const int k = detail::dominant_grade(mv, tol);
    return Blade(grade_projection(mv, k), k);
  }

  const Multivector& mv() const { return mv_; }
  int grade() const { return grade_; }
  double magnitude() const { return magnitude_; }
  Signature signature() const { return mv_.signature(); }

 private:
  Blade(Multivector mv, int grade)
      : mv_(std::move(mv)), grade_(grade), magnitude_(norm(mv_)) {}

  Multivector mv_;
  int grade_;
  double magnitude_;
};

inline Blade blade_from_spanning_vectors(
    Signature sig, std::span<const std::vector<double>> vectors) {
  return Blade::from_vectors(sig, vectors);
}

// b = magnitude * f_1 f_2 ... f_k with orthonormal f_i. Euclidean only.
inline OrthogonalFactorization orthogonal_factorization(const Blade& b) {
  if (!b.signature().is_euclidean()) {
    throw NonEuclidean("orthogonal factorization needs a Euclidean signature");
  }
  return detail::factor_euclidean(b.mv(), b.grade());
}

// |x ^ b| <= tol |x| |b|.
inline bool subspace_membership(std::span<const double> x, const Blade& b,
                                double tol = kDefaultTolerance) {
  const Multivector v = Multivector::vector(b.signature(), x);
  const Multivector wedge = v ^ b.mv();
  return coeff_norm(wedge) <= tol * coeff_norm(v) * coeff_norm(b.mv());
}

}  // namespace gaangle

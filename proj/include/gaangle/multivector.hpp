#pragma once

// Dense multivectors of Cl(p,q), n = p + q <= 12.
//
// Coefficients are indexed by basis-blade bitmask: bit i set means e_{i+1}
// is a factor, factors in increasing index order. Basis vectors e_1..e_p
// square to +1 and e_{p+1}..e_n to -1.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaangle/errors.hpp"

namespace gaangle {

inline constexpr int kMaxDimension = 12;

using BladeMask = std::uint32_t;

struct Signature {
  int p = 0;
  int q = 0;

  constexpr Signature() = default;
  constexpr Signature(int positive, int negative) : p(positive), q(negative) {
    if (p < 0 || q < 0 || p + q < 1 || p + q > kMaxDimension) {
      throw InvalidInput("signature (" + std::to_string(p) + "," +
                         std::to_string(q) + ") outside 1 <= p+q <= 12");
    }
  }

  static constexpr Signature euclidean(int n) { return Signature(n, 0); }

  constexpr int n() const { return p + q; }
  constexpr std::size_t blade_count() const { return std::size_t{1} << n(); }
  constexpr bool is_euclidean() const { return q == 0; }
  // Square of basis vector e_{index+1}.
  constexpr int metric(int index) const { return index < p ? 1 : -1; }

  friend constexpr bool operator==(Signature, Signature) = default;
};

constexpr int grade_of(BladeMask mask) { return std::popcount(mask); }

struct BasisProduct {
  BladeMask mask;
  int sign;  // -1, 0 or +1
};

// Product of two basis blades. The sign collects one factor -1 per
// transposition needed to sort the concatenated factor list, and the metric
// factor of every basis vector shared by both blades.
constexpr BasisProduct basis_blade_product(BladeMask a, BladeMask b,
                                           Signature sig) {
  int swaps = 0;
  for (BladeMask rest = a >> 1; rest != 0; rest >>= 1) {
    swaps += std::popcount(rest & b);
  }
  int sign = (swaps & 1) ? -1 : 1;
  for (BladeMask shared = a & b; shared != 0; shared &= shared - 1) {
    sign *= sig.metric(std::countr_zero(shared));
  }
  return {a ^ b, sign};
}

class Multivector {
 public:
  explicit Multivector(Signature sig)
      : sig_(sig), coeffs_(sig.blade_count(), 0.0) {}

  Multivector(Signature sig, std::vector<double> coeffs)
      : sig_(sig), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != sig_.blade_count()) {
      throw InvalidInput("expected " + std::to_string(sig_.blade_count()) +
                         " coefficients, got " +
                         std::to_string(coeffs_.size()));
    }
    for (double c : coeffs_) {
      if (!std::isfinite(c)) throw InvalidInput("non-finite coefficient");
    }
  }

  static Multivector scalar(Signature sig, double value) {
    return basis(sig, 0, value);
  }

  static Multivector basis(Signature sig, BladeMask mask, double value = 1.0) {
    if (mask >= sig.blade_count()) throw InvalidInput("basis mask out of range");
    std::vector<double> c(sig.blade_count(), 0.0);
    c[mask] = value;
    return Multivector(sig, std::move(c));
  }

  // Grade-1 element with the given components on e_1..e_n.
  static Multivector vector(Signature sig, std::span<const double> components) {
    if (static_cast<int>(components.size()) != sig.n()) {
      throw InvalidInput("vector has " + std::to_string(components.size()) +
                         " components, signature dimension is " +
                         std::to_string(sig.n()));
    }
    std::vector<double> c(sig.blade_count(), 0.0);
    for (int i = 0; i < sig.n(); ++i) c[BladeMask{1} << i] = components[i];
    return Multivector(sig, std::move(c));
  }

  Signature signature() const { return sig_; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](BladeMask mask) const { return coeffs_[mask]; }
  std::size_t size() const { return coeffs_.size(); }

  // Grade-1 components as a plain n-vector.
  std::vector<double> vector_part() const {
    std::vector<double> v(sig_.n());
    for (int i = 0; i < sig_.n(); ++i) v[i] = coeffs_[BladeMask{1} << i];
    return v;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](double c) { return c == 0.0; });
  }

  Multivector operator-() const { return scaled(-1.0); }

  friend Multivector operator+(const Multivector& a, const Multivector& b) {
    return a.combine(b, 1.0);
  }
  friend Multivector operator-(const Multivector& a, const Multivector& b) {
    return a.combine(b, -1.0);
  }
  friend Multivector operator*(const Multivector& a, double s) {
    return a.scaled(s);
  }
  friend Multivector operator*(double s, const Multivector& a) {
    return a.scaled(s);
  }
  friend Multivector operator/(const Multivector& a, double s) {
    return a.scaled(1.0 / s);
  }

 private:
  Multivector scaled(double s) const {
    std::vector<double> c(coeffs_);
    for (double& x : c) x *= s;
    return Multivector(sig_, std::move(c));
  }

  Multivector combine(const Multivector& b, double factor) const {
    if (sig_ != b.sig_) throw SignatureMismatch();
    std::vector<double> c(coeffs_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += factor * b.coeffs_[i];
    return Multivector(sig_, std::move(c));
  }

  Signature sig_;
  std::vector<double> coeffs_;
};

namespace detail {

// Bilinear product restricted to basis pairs accepted by `keep`.
template <typename Keep>
Multivector filtered_product(const Multivector& a, const Multivector& b,
                             Keep keep) {
  const Signature sig = a.signature();
  if (sig != b.signature()) throw SignatureMismatch();
  std::vector<BladeMask> b_support;
  for (BladeMask j = 0; j < b.size(); ++j) {
    if (b[j] != 0.0) b_support.push_back(j);
  }
  std::vector<double> out(sig.blade_count(), 0.0);
  for (BladeMask i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (BladeMask j : b_support) {
      if (!keep(i, j)) continue;
      const auto [mask, sign] = basis_blade_product(i, j, sig);
      out[mask] += sign * ai * b[j];
    }
  }
  return Multivector(sig, std::move(out));
}

}  // namespace detail

inline Multivector geometric_product(const Multivector& a,
                                     const Multivector& b) {
  return detail::filtered_product(a, b, [](BladeMask, BladeMask) { return true; });
}

inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

// <a_r b_s>_{r+s}: only basis pairs without shared factors contribute.
inline Multivector outer_product(const Multivector& a, const Multivector& b) {
  return detail::filtered_product(
      a, b, [](BladeMask i, BladeMask j) { return (i & j) == 0; });
}

inline Multivector operator^(const Multivector& a, const Multivector& b) {
  return outer_product(a, b);
}

// <a_r b_s>_{s-r}, zero when r > s.
inline Multivector left_contraction(const Multivector& a,
                                    const Multivector& b) {
  return detail::filtered_product(
      a, b, [](BladeMask i, BladeMask j) { return (i & ~j) == 0; });
}

// <a_r b_s>_{r-s}, zero when s > r.
inline Multivector right_contraction(const Multivector& a,
                                     const Multivector& b) {
  return detail::filtered_product(
      a, b, [](BladeMask i, BladeMask j) { return (j & ~i) == 0; });
}

inline Multivector reverse(const Multivector& a) {
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  for (BladeMask m = 0; m < c.size(); ++m) {
    const int k = grade_of(m);
    if ((k * (k - 1) / 2) & 1) c[m] = -c[m];
  }
  return Multivector(a.signature(), std::move(c));
}

inline Multivector grade_projection(const Multivector& a, int grade) {
  std::vector<double> c(a.size(), 0.0);
  for (BladeMask m = 0; m < c.size(); ++m) {
    if (grade_of(m) == grade) c[m] = a[m];
  }
  return Multivector(a.signature(), std::move(c));
}

using GradedParts = std::map<int, Multivector>;

// Grades holding at least one nonzero coefficient. Parts are disjoint in
// support, so their sum is the input exactly.
inline GradedParts graded_parts(const Multivector& a) {
  GradedParts parts;
  for (BladeMask m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0) continue;
    const int k = grade_of(m);
    if (!parts.contains(k)) parts.emplace(k, grade_projection(a, k));
  }
  return parts;
}

// <ab>_0 without forming the full product.
inline double scalar_product(const Multivector& a, const Multivector& b) {
  const Signature sig = a.signature();
  if (sig != b.signature()) throw SignatureMismatch();
  double sum = 0.0;
  for (BladeMask m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0 || b[m] == 0.0) continue;
    sum += basis_blade_product(m, m, sig).sign * a[m] * b[m];
  }
  return sum;
}

// <a reverse(a)>_0; may be negative outside Euclidean signatures.
inline double norm_squared(const Multivector& a) {
  return scalar_product(a, reverse(a));
}

inline double norm(const Multivector& a) {
  const double sq = norm_squared(a);
  if (sq < 0.0) throw NegativeSquare(sq);
  return std::sqrt(sq);
}

// Plain Euclidean 2-norm of the coefficient array, metric independent.
inline double coeff_norm(const Multivector& a) {
  double sum = 0.0;
  for (double c : a.coeffs()) sum += c * c;
  return std::sqrt(sum);
}

// Same coefficients reinterpreted in Cl(n,0).
inline Multivector euclidean_view(const Multivector& a) {
  const auto c = a.coeffs();
  return Multivector(Signature::euclidean(a.signature().n()),
                     std::vector<double>(c.begin(), c.end()));
}

// v x reverse(v), the versor action used for rotors and translators.
inline Multivector sandwich(const Multivector& versor, const Multivector& x) {
  return versor * x * reverse(versor);
}

// Basis-blade name such as "e13"; indices are joined by '_' once n >= 10.
inline std::string blade_name(BladeMask mask, int n) {
  if (mask == 0) return "1";
  std::string name = "e";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (!(mask & (BladeMask{1} << i))) continue;
    if (n >= 10 && !first) name += '_';
    name += std::to_string(i + 1);
    first = false;
  }
  return name;
}

}  // namespace gaangle

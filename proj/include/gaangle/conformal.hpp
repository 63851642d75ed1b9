#pragma once

// Angles between conformal flats and rounds of R^n, modelled in Cl(n+1,1).
//
// Basis layout: e_1..e_n Euclidean (bits 0..n-1), e_+ (bit n, squares to +1)
// and e_- (bit n+1, squares to -1). The null vectors are
//   e_o = (e_- - e_+) / 2,  e_inf = e_- + e_+,
// so e_o^2 = e_inf^2 = 0 and e_o . e_inf = -1.
//
// A round X (X ^ e_inf != 0) is first replaced by its carrier flat
// X ^ e_inf. The Euclidean direction of a flat is X _| E with the Minkowski
// plane E = e_o ^ e_inf; two such directions go to the Euclidean angle
// engine.

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "gaangle/angle_engine.hpp"
#include "gaangle/blade.hpp"
#include "gaangle/errors.hpp"
#include "gaangle/multivector.hpp"

namespace gaangle::conformal {

inline constexpr double kWedgeZeroTolerance = 1e-10;

// Conformal model of R^n.
class Space {
 public:
  explicit Space(int n) : n_(n), sig_(n + 1, 1) {
    if (n < 1 || n + 2 > kMaxDimension) {
      throw InvalidInput("conformal model needs 1 <= n <= 10");
    }
  }

  int n() const { return n_; }
  Signature signature() const { return sig_; }

  Multivector e_plus() const { return Multivector::basis(sig_, BladeMask{1} << n_); }
  Multivector e_minus() const {
    return Multivector::basis(sig_, BladeMask{1} << (n_ + 1));
  }
  Multivector origin() const { return (e_minus() - e_plus()) * 0.5; }
  Multivector infinity() const { return e_minus() + e_plus(); }
  Multivector minkowski_plane() const { return origin() ^ infinity(); }

  // Euclidean vector of R^n as a grade-1 element of Cl(n+1,1).
  Multivector direction(std::span<const double> x) const {
    check(x);
    std::vector<double> c(sig_.blade_count(), 0.0);
    for (int i = 0; i < n_; ++i) c[BladeMask{1} << i] = x[i];
    return Multivector(sig_, std::move(c));
  }

  // x + x^2/2 e_inf + e_o
  Multivector point(std::span<const double> x) const {
    double sq = 0.0;
    for (double c : x) sq += c * c;
    return direction(x) + infinity() * (0.5 * sq) + origin();
  }

  // 1 - t e_inf / 2, moving objects by t under sandwich().
  Multivector translator(std::span<const double> t) const {
    return Multivector::scalar(sig_, 1.0) - direction(t) * infinity() * 0.5;
  }

  // Flat through `through` spanned by the given directions: p ^ D ^ e_inf.
  Multivector flat(std::span<const double> through,
                   std::span<const std::vector<double>> directions) const {
    Multivector x = point(through);
    for (const auto& d : directions) x = x ^ direction(d);
    return x ^ infinity();
  }

  // Round (point pair, circle, sphere) through the given points.
  Multivector round(std::span<const std::vector<double>> points) const {
    if (points.empty()) throw InvalidInput("round needs at least one point");
    Multivector x = Multivector::scalar(sig_, 1.0);
    for (const auto& p : points) x = x ^ point(p);
    return x;
  }

  // Euclidean part of a Cl(n+1,1) element as a Cl(n,0) multivector.
  Multivector to_euclidean(const Multivector& x) const {
    if (x.signature() != sig_) throw SignatureMismatch();
    const Signature euclid = Signature::euclidean(n_);
    std::vector<double> c(euclid.blade_count());
    for (BladeMask m = 0; m < c.size(); ++m) c[m] = x[m];
    return Multivector(euclid, std::move(c));
  }

 private:
  void check(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) {
      throw InvalidInput("expected a vector of R^" + std::to_string(n_));
    }
  }

  int n_;
  Signature sig_;
};

enum class Kind { Round, Flat };

class Object {
 public:
  Object(const Space& space, Multivector mv) : mv_(std::move(mv)) {
    if (mv_.signature() != space.signature()) throw SignatureMismatch();
    if (!is_blade(mv_)) throw NotABlade("conformal object is not a blade");
    const double wedge = coeff_norm(mv_ ^ space.infinity());
    kind_ = wedge > kWedgeZeroTolerance * coeff_norm(mv_) ? Kind::Round
                                                          : Kind::Flat;
  }

  const Multivector& mv() const { return mv_; }
  Kind kind() const { return kind_; }

 private:
  Multivector mv_;
  Kind kind_;
};

// X ^ e_inf for rounds, X itself for flats.
inline Multivector to_offset_flat(const Space& space, const Object& x) {
  if (x.kind() == Kind::Flat) return x.mv();
  return x.mv() ^ space.infinity();
}

// Euclidean direction blade of the object's carrier flat, X _| E.
inline Blade carrier(const Space& space, const Object& x) {
  const Multivector flat = to_offset_flat(space, x);
  const Multivector contracted = right_contraction(flat, space.minkowski_plane());
  const double total = coeff_norm(contracted);
  const Multivector euclid = space.to_euclidean(contracted);
  const double euclid_norm = coeff_norm(euclid);
  if (total <= kWedgeZeroTolerance * coeff_norm(flat) ||
      euclid_norm <= kWedgeZeroTolerance * total) {
    throw NoDirection("object has no Euclidean direction part");
  }
  double null_part = 0.0;
  for (BladeMask m = BladeMask{1} << space.n(); m < contracted.size(); ++m) {
    null_part += contracted[m] * contracted[m];
  }
  if (std::sqrt(null_part) > kDefaultTolerance * total) {
    throw NotABlade("carrier keeps null components; object is not a flat");
  }
  const int k = detail::dominant_grade(euclid, kDefaultTolerance);
  if (k < 1) throw NoDirection("carrier of the object is a point");
  return Blade::from_multivector(euclid);
}

inline AngleReport conformal_relative_angle(const Space& space, const Object& x,
                                            const Object& y,
                                            const EngineOptions& options = {}) {
  return relative_angle(carrier(space, x), carrier(space, y), options);
}

}  // namespace gaangle::conformal

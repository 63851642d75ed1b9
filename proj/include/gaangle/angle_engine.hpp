#pragma once

// Relative orientation of two subspaces read off the single product A ~B.
//
// For normalized blades with grade(A) = r + q >= grade(B) = r the product
// factors as
//
//   A ~B = A_1 (c_1 + s_1 i_1) ... (c_m + s_m i_m) i_perp_1 ... i_perp_t
//
// where A_1 is the part of A orthogonal to B, the (c_k + s_k i_k) are the
// rotors of the m interior principal angles and the i_perp are the planes of
// the t right angles. Every factor commutes with every other, so:
//   - the lowest nonzero grade is q + 2t, with norm prod c_k;
//   - dividing by that part leaves prod (1 + tan(theta_k) i_k), whose
//     bivector part splits into the tangents and principal planes;
//   - the top grade q + 2(t + m) has norm prod_{theta_k > 0} sin(theta_k).

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "gaangle/bivector_split.hpp"
#include "gaangle/blade.hpp"
#include "gaangle/errors.hpp"
#include "gaangle/multivector.hpp"

namespace gaangle {

// Tangents closer than this (relative) are reported as a repeated angle,
// whose principal planes are then not unique.
inline constexpr double kRepeatedAngleTolerance = 1e-8;

struct AngleReport {
  int s = 0;  // zero principal angles: dimension of the intersection
  int t = 0;  // right principal angles
  int q = 0;  // grade difference of the two blades
  int lowest_grade = 0;
  std::vector<double> angles;    // descending, size min(grade A, grade B)
  std::vector<double> tangents;  // interior angles only, descending
  std::vector<Multivector> planes;  // unit planes of the interior angles
  double cos_total = 0.0;     // prod over all angles, 0 whenever t > 0
  double cos_interior = 0.0;  // prod over interior angles
  double sin_interior_product = 0.0;  // prod of sines over nonzero angles
  Multivector lowest_blade{Signature::euclidean(1)};  // unit, grade q + 2t
  bool repeated_angles = false;
  // True when the product was formed as B ~A (B had the higher grade, or
  // equal grades and B comes first in coefficient order).
  bool swapped = false;
  double residual = 0.0;
};

struct GradePart {
  Multivector part;
  double norm;
};

struct ProductSpectrum {
  std::map<int, GradePart> parts;  // only grades with nonzero coefficients
};

inline ProductSpectrum product_spectrum(const Multivector& a,
                                        const Multivector& b) {
  ProductSpectrum out;
  for (auto& [k, part] : graded_parts(a * reverse(b))) {
    const double n = coeff_norm(part);
    out.parts.emplace(k, GradePart{std::move(part), n});
  }
  return out;
}

inline ProductSpectrum product_spectrum(const Blade& a, const Blade& b) {
  return product_spectrum(a.mv(), b.mv());
}

// <A ~B>_0 / (|A||B|). Signed: the sign carries the relative orientation.
inline double cos_total(const Blade& a, const Blade& b) {
  if (a.signature() != b.signature()) throw SignatureMismatch();
  if (a.grade() != b.grade()) {
    throw GradeMismatch("cos_total needs blades of equal grade");
  }
  return scalar_product(a.mv(), reverse(b.mv())) /
         (a.magnitude() * b.magnitude());
}

// |A||B| prod_k (cos theta_k + i_k sin theta_k) times the lowest-grade unit
// blade (A_1 and the right-angle planes). Compare against X ~Y with X the
// first blade of the ordered pair (see AngleReport::swapped).
inline Multivector rotor_reconstruction(const AngleReport& report,
                                        double norm_a, double norm_b) {
  const Signature sig = report.lowest_blade.signature();
  Multivector out = Multivector::scalar(sig, norm_a * norm_b);
  for (std::size_t k = 0; k < report.planes.size(); ++k) {
    const double theta = std::atan(report.tangents[k]);
    out = out * (Multivector::scalar(sig, std::cos(theta)) +
                 report.planes[k] * std::sin(theta));
  }
  return out * report.lowest_blade;
}

struct EngineOptions {
  // A grade part of the normalized product is zero when its norm is at most
  // this; the same bound applies to principal tangents.
  double tolerance = kDefaultTolerance;
};

inline AngleReport relative_angle(const Blade& first, const Blade& second,
                                  const EngineOptions& options = {}) {
  if (first.signature() != second.signature()) throw SignatureMismatch();
  if (!first.signature().is_euclidean()) {
    throw NonEuclidean("relative angles need a Euclidean signature");
  }
  const double tol = options.tolerance;

  bool swapped = first.grade() < second.grade();
  if (first.grade() == second.grade()) {
    const auto fc = first.mv().coeffs();
    const auto sc = second.mv().coeffs();
    swapped = std::lexicographical_compare(sc.begin(), sc.end(), fc.begin(),
                                           fc.end());
  }
  const Blade& a = swapped ? second : first;
  const Blade& b = swapped ? first : second;

  AngleReport report;
  report.swapped = swapped;
  const int r = b.grade();
  report.q = a.grade() - r;

  const Multivector product =
      (a.mv() / a.magnitude()) * reverse(b.mv() / b.magnitude());
  std::map<int, double> norms;
  for (const auto& [k, part] : graded_parts(product)) {
    norms[k] = coeff_norm(part);
  }

  int lowest = -1;
  for (const auto& [k, n] : norms) {
    if (n > tol) {
      lowest = k;
      break;
    }
    if (n > tol / 10.0) {
      throw AmbiguousRank("grade " + std::to_string(k) + " part norm " +
                          format_number(n) + " is near the zero threshold");
    }
  }
  if (lowest < 0) throw AmbiguousRank("product has no nonzero grade part");
  if (norms[lowest] < 10.0 * tol) {
    throw AmbiguousRank("lowest grade part norm is near the zero threshold");
  }
  if (lowest < report.q || (lowest - report.q) % 2 != 0 ||
      (lowest - report.q) / 2 > r) {
    throw AmbiguousRank("lowest grade " + std::to_string(lowest) +
                        " is inconsistent with grades " +
                        std::to_string(a.grade()) + ", " + std::to_string(r));
  }
  report.lowest_grade = lowest;
  report.t = (lowest - report.q) / 2;

  const Multivector lowest_part = grade_projection(product, lowest);
  report.cos_interior = norms[lowest];
  report.lowest_blade = lowest_part / report.cos_interior;

  const Multivector inverse = reverse(lowest_part) / norm_squared(lowest_part);
  const Multivector divided = product * inverse;
  const auto split = bivector_split(grade_projection(divided, 2), tol / 10.0);
  for (const auto& part : split) {
    if (part.beta < 10.0 * tol) {
      throw AmbiguousRank("principal tangent " + format_number(part.beta) +
                          " is near the zero threshold");
    }
  }
  const int interior = static_cast<int>(split.size());
  if (report.t + interior > r) {
    throw AmbiguousRank("more principal planes than principal angles");
  }
  report.s = r - report.t - interior;

  report.angles.assign(report.t, std::numbers::pi / 2.0);
  for (const auto& part : split) {
    report.tangents.push_back(part.beta);
    report.planes.push_back(part.plane);
    report.angles.push_back(std::atan(part.beta));
  }
  report.angles.resize(r, 0.0);
  for (std::size_t k = 1; k < report.tangents.size(); ++k) {
    if (report.tangents[k - 1] - report.tangents[k] <=
        kRepeatedAngleTolerance * report.tangents[k - 1]) {
      report.repeated_angles = true;
    }
  }

  report.cos_total = report.t > 0 ? 0.0 : report.cos_interior;
  const int top = report.q + 2 * (report.t + interior);
  report.sin_interior_product = norms.contains(top) ? norms[top] : 0.0;
  report.residual =
      coeff_norm(rotor_reconstruction(report, 1.0, 1.0) - product);
  return report;
}

}  // namespace gaangle

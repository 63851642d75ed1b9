#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gaangle/conformal.hpp"
#include "reference.hpp"

using namespace gaangle;
using namespace gaangle::conformal;

namespace {

using Vectors = std::vector<std::vector<double>>;

const Space kR3(3);

}  // namespace

TEST(ConformalSpace, NullBasis) {
  const auto o = kR3.origin();
  const auto inf = kR3.infinity();
  EXPECT_DOUBLE_EQ(scalar_product(o, o), 0.0);
  EXPECT_DOUBLE_EQ(scalar_product(inf, inf), 0.0);
  EXPECT_DOUBLE_EQ(scalar_product(o, inf), -1.0);
  // Points are null and their inner product is minus half the squared distance.
  const auto p = kR3.point(std::vector<double>{1, 2, 3});
  const auto q = kR3.point(std::vector<double>{0, 2, 1});
  EXPECT_NEAR(scalar_product(p, p), 0.0, 1e-14);
  EXPECT_NEAR(scalar_product(p, q), -2.5, 1e-14);
  EXPECT_THROW(Space(0), InvalidInput);
  EXPECT_THROW(Space(11), InvalidInput);
}

TEST(ConformalObject, SphereIsRoundAndItsCarrierIsAFlat) {
  const Vectors pts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Object sphere(kR3, kR3.round(pts));
  EXPECT_EQ(sphere.kind(), Kind::Round);
  EXPECT_GT(coeff_norm(sphere.mv() ^ kR3.infinity()), 0.0);
  const Object carrier_flat(kR3, to_offset_flat(kR3, sphere));
  EXPECT_EQ(carrier_flat.kind(), Kind::Flat);
  EXPECT_EQ(carrier(kR3, sphere).grade(), 3);
}

TEST(ConformalObject, FlatIsReturnedUnchanged) {
  const auto plane = kR3.flat(std::vector<double>{0, 0, 1}, Vectors{{1, 0, 0}, {0, 1, 0}});
  const Object x(kR3, plane);
  EXPECT_EQ(x.kind(), Kind::Flat);
  EXPECT_EQ(reference::max_abs_diff(to_offset_flat(kR3, x), plane), 0.0);
}

TEST(ConformalObject, PointBecomesFlatPoint) {
  const auto p = kR3.point(std::vector<double>{1, -1, 2});
  const Object x(kR3, p);
  EXPECT_EQ(x.kind(), Kind::Round);
  EXPECT_EQ(reference::max_abs_diff(to_offset_flat(kR3, x), p ^ kR3.infinity()), 0.0);
}

TEST(ConformalObject, RejectsNonBlade) {
  // e12 + e3 e+ spans four independent vectors: not simple.
  const auto e12 = kR3.direction(std::vector<double>{1, 0, 0}) ^
                   kR3.direction(std::vector<double>{0, 1, 0});
  const auto mixed = e12 + (kR3.direction(std::vector<double>{0, 0, 1}) ^ kR3.e_plus());
  EXPECT_THROW(Object(kR3, mixed), NotABlade);
}

TEST(ConformalAngle, DihedralAngleBetweenPlanes) {
  const double alpha = 0.7;
  const auto p1 = kR3.flat(std::vector<double>{0, 0, 0}, Vectors{{1, 0, 0}, {0, 1, 0}});
  const auto p2 = kR3.flat(std::vector<double>{3, -2, 5},
                           Vectors{{1, 0, 0}, {0, std::cos(alpha), std::sin(alpha)}});
  const auto r = conformal_relative_angle(kR3, Object(kR3, p1), Object(kR3, p2));
  EXPECT_EQ(r.s, 1);
  EXPECT_EQ(r.t, 0);
  EXPECT_NEAR(r.angles[0], alpha, 1e-12);
  EXPECT_NEAR(r.angles[1], 0.0, 1e-12);
}

TEST(ConformalAngle, SphereAgainstTangentPlane) {
  const Vectors pts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto sphere = kR3.round(pts);
  const auto tangent = kR3.flat(std::vector<double>{0, 0, 1}, Vectors{{1, 0, 0}, {0, 1, 0}});
  const auto r = conformal_relative_angle(kR3, Object(kR3, sphere), Object(kR3, tangent));
  EXPECT_EQ(r.q, 1);
  EXPECT_EQ(r.s, 2);
  EXPECT_NEAR(r.cos_total, 1.0, 1e-12);
}

TEST(ConformalAngle, IdenticalFlats) {
  const auto line = kR3.flat(std::vector<double>{1, 2, 3}, Vectors{{1, 1, 0}});
  const Object x(kR3, line);
  const auto r = conformal_relative_angle(kR3, x, x);
  EXPECT_EQ(r.s, 1);
  EXPECT_EQ(r.angles[0], 0.0);
}

TEST(ConformalCarrier, MatchesDirectionBladeUpToScale) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    const int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const Space space(n);
    Vectors dirs;
    for (int i = 0; i < k; ++i) dirs.push_back(reference::random_vector(rng, n));
    const auto through = reference::random_vector(rng, n);
    const Blade got = carrier(space, Object(space, space.flat(through, dirs)));
    const Blade want = Blade::from_vectors(Signature::euclidean(n), dirs);
    ASSERT_EQ(got.grade(), k);
    // The carrier is parallel to the direction blade: their normalized
    // coefficient vectors agree up to sign.
    const double dot = scalar_product(got.mv(), reverse(want.mv()));
    EXPECT_NEAR(std::abs(dot), got.magnitude() * want.magnitude(),
                1e-9 * got.magnitude() * want.magnitude());
  }
}

TEST(ConformalAngle, TranslationInvariance) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    Vectors da, db;
    const int ka = std::uniform_int_distribution<int>(1, 2)(rng);
    const int kb = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int i = 0; i < ka; ++i) da.push_back(reference::random_vector(rng, 3));
    for (int i = 0; i < kb; ++i) db.push_back(reference::random_vector(rng, 3));
    const auto x = kR3.flat(reference::random_vector(rng, 3), da);
    const auto y = kR3.flat(reference::random_vector(rng, 3), db);
    const auto t = kR3.translator(reference::random_vector(rng, 3));
    const auto before = conformal_relative_angle(kR3, Object(kR3, x), Object(kR3, y));
    const auto after = conformal_relative_angle(kR3, Object(kR3, sandwich(t, x)),
                                                Object(kR3, sandwich(t, y)));
    ASSERT_EQ(before.angles.size(), after.angles.size());
    for (std::size_t i = 0; i < before.angles.size(); ++i) {
      EXPECT_NEAR(before.angles[i], after.angles[i], 1e-8);
    }
  }
}

TEST(ConformalCarrier, PointsAndFreeDirectionsHaveNoDirection) {
  const auto p = kR3.point(std::vector<double>{1, 2, 3});
  EXPECT_THROW(carrier(kR3, Object(kR3, p)), NoDirection);
  const auto free = kR3.direction(std::vector<double>{1, 0, 0}) ^ kR3.infinity();
  EXPECT_THROW(carrier(kR3, Object(kR3, free)), NoDirection);
}

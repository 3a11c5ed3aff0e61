#include "support.hpp"

#include <gtest/gtest.h>

using namespace conicmap;
using conicmap::testing::fd_jacobian;
using conicmap::testing::singular_values;
using conicmap::testing::uniform;

namespace {

  constexpr double deg = pi / 180;

  std::vector<ConicSpec> branches() {
    return {build_conic_two_parallels(30 * deg, 60 * deg), build_conic_one_parallel(45 * deg),
            build_azimuthal(), build_cylindrical(20 * deg)};
  }

  TEST(Jacobian, StandardParallelIsLocalIsometry) {
    for (const ConicSpec& s : branches())
      for (double phi : s.standard_parallels()) {
        if (std::abs(phi) >= half_pi) continue;
        const auto sv = singular_values(analytic_jacobian(s, GeoPoint(phi, 0.4)));
        EXPECT_NEAR(sv[0], 1, 1e-12);
        EXPECT_NEAR(sv[1], 1, 1e-12);
      }
  }

  TEST(Jacobian, PlateCarreeAtSixty) {
    const auto sv = singular_values(analytic_jacobian(build_cylindrical(0), GeoPoint::degrees(60, 10)));
    EXPECT_NEAR(sv[0], 2, 1e-12);
    EXPECT_NEAR(sv[1], 1, 1e-12);
  }

  TEST(Jacobian, MatchesFiniteDifferences) {
    std::mt19937_64 rng(conicmap::testing::jacobian_seed);
    for (const ConicSpec& s : branches()) {
      double worst = 0;
      for (int i = 0; i < 1000; ++i) {
        const GeoPoint p(uniform(rng, -1.4, 1.4), uniform(rng, -3.1, 3.1));
        const Jacobian a = analytic_jacobian(s, p), f = fd_jacobian(s, p);
        const double scale = std::max({std::hypot(a.x_north, a.y_north), std::hypot(a.x_east, a.y_east)});
        for (auto [x, y] : {std::pair{a.x_north, f.x_north}, {a.y_north, f.y_north},
                            {a.x_east, f.x_east}, {a.y_east, f.y_east}})
          worst = std::max(worst, std::abs(x - y) / scale);
      }
      EXPECT_LT(worst, 1e-6) << s.label();
    }
  }

  TEST(Jacobian, SingularAtPoles) {
    EXPECT_THROW(analytic_jacobian(build_azimuthal(), GeoPoint(half_pi, 0)), DomainError);
    EXPECT_THROW(analytic_jacobian(build_cylindrical(0), GeoPoint(-half_pi, 0)), DomainError);
  }

  TEST(Jacobian, OrthogonalColumnsAndPositiveDeterminant) {
    for (const ConicSpec& s : branches()) {
      const Jacobian j = analytic_jacobian(s, GeoPoint(0.3, -1.1));
      EXPECT_NEAR(j.x_north * j.x_east + j.y_north * j.y_east, 0, 1e-15);
      // North then east is clockwise in the plane, as for any map with x east.
      EXPECT_LT(j.det(), 0);
    }
  }

  TEST(ScalePoint, Examples) {
    ScaleFactors f = scale_point(build_conic_two_parallels(30 * deg, 60 * deg), GeoPoint(30 * deg, 1));
    EXPECT_NEAR(f.M, 1, 1e-15);
    EXPECT_NEAR(f.m, 1, 1e-15);
    EXPECT_NEAR(f.sigma, 1, 1e-15);
    EXPECT_NEAR(f.K, 1, 1e-15);

    f = scale_point(build_cylindrical(0), GeoPoint::degrees(60, 0));
    EXPECT_NEAR(f.M, 2, 1e-15);
    EXPECT_EQ(f.m, 1);
    EXPECT_NEAR(f.sigma, 2, 1e-15);
    EXPECT_NEAR(f.K, 2, 1e-15);

    // k < 1: sigma = K = 1/k (mpmath oracle)
    f = scale_point(build_conic_two_parallels(0, 63 * deg), GeoPoint::degrees(36, 0));
    EXPECT_EQ(f.M, 1);
    EXPECT_NEAR(f.m, 0.85040805825258439, 1e-12);
    EXPECT_NEAR(f.sigma, 1.1759060727326557, 1e-12);
    EXPECT_NEAR(f.K, 1.1759060727326557, 1e-12);
  }

  TEST(ScalePoint, SigmaIsAtLeastOneWithEqualityOnlyWhereKIsOne) {
    std::mt19937_64 rng(conicmap::testing::jacobian_seed + 1);
    for (const ConicSpec& s : branches())
      for (int i = 0; i < 1000; ++i) {
        const GeoPoint p(uniform(rng, -1.4, 1.4), uniform(rng, -pi, pi));
        const ScaleFactors f = scale_point(s, p);
        EXPECT_GE(f.sigma, 1);
        EXPECT_GE(f.K, 1);
        EXPECT_GE(f.M, f.m);
        if (f.sigma == 1) {
          EXPECT_NEAR(parallel_scale(s, p.lat()), 1, 1e-12);
        }
      }
  }

  TEST(Tissot, CircleOnStandardParallel) {
    const TissotEllipse e = tissot(build_conic_two_parallels(30 * deg, 60 * deg), GeoPoint(60 * deg, 0.7));
    EXPECT_NEAR(e.semi_major, 1, 1e-14);
    EXPECT_NEAR(e.semi_minor, 1, 1e-14);
    EXPECT_EQ(e.orientation, 0);
  }

  TEST(Tissot, AzimuthalMajorAxisAlongParallel) {
    const ConicSpec s = build_azimuthal();
    for (double lon : {0.0, 0.5, -2.0}) {
      const GeoPoint p(60 * deg, lon);
      const TissotEllipse e = tissot(s, p);
      EXPECT_NEAR(e.semi_major, 1.0471975511965977, 1e-14);
      EXPECT_NEAR(e.semi_minor, 1, 1e-15);
      // Tangent to the parallel circle: perpendicular to the radius vector.
      const PlanePoint c = forward(s, p);
      EXPECT_NEAR(std::cos(e.orientation) * c.x + std::sin(e.orientation) * c.y, 0, 1e-14);
      EXPECT_GT(e.orientation, -half_pi);
      EXPECT_LE(e.orientation, half_pi);
    }
  }

  TEST(Tissot, MajorAxisAlongMeridianWhenParallelShrinks) {
    const ConicSpec s = build_conic_two_parallels(30 * deg, 60 * deg);
    const GeoPoint p(45 * deg, 1.0);
    const TissotEllipse e = tissot(s, p);
    ASSERT_LT(parallel_scale(s, p.lat()), 1);
    // Meridian image points at the apex: orientation is parallel to the radius.
    const PlanePoint c = forward(s, p);
    EXPECT_NEAR(std::abs(std::cos(e.orientation) * c.y - std::sin(e.orientation) * c.x), 0, 1e-14);
  }

  TEST(Tissot, AxesEqualFiniteDifferenceSingularValues) {
    std::mt19937_64 rng(conicmap::testing::jacobian_seed + 2);
    for (const ConicSpec& s : branches())
      for (int i = 0; i < 500; ++i) {
        const GeoPoint p(uniform(rng, -1.3, 1.3), uniform(rng, -3, 3));
        const TissotEllipse e = tissot(s, p);
        const auto sv = singular_values(fd_jacobian(s, p));
        EXPECT_NEAR(e.semi_major, sv[0], 1e-6 * sv[0]);
        EXPECT_NEAR(e.semi_minor, sv[1], 1e-6 * sv[0]);
      }
  }

  TEST(Tissot, DilatationInvariantUnderPlaneSimilarity) {
    // K from finite differences of s * forward(p) does not depend on s;
    // sigma does.
    const ConicSpec spec = build_conic_two_parallels(20 * deg, 50 * deg);
    const GeoPoint p(70 * deg, 0.4);
    const Jacobian j = fd_jacobian(spec, p);
    const auto sv = singular_values(j);
    const double K = sv[0] / sv[1];
    for (double scale : {0.5, 2.0, 10.0}) {
      const double rot = 0.3;
      auto map = [&](double lat, double lon) {
        const PlanePoint q = forward(spec, GeoPoint(lat, lon));
        return PlanePoint{scale * (std::cos(rot) * q.x - std::sin(rot) * q.y) + 3,
                          scale * (std::sin(rot) * q.x + std::cos(rot) * q.y) - 1};
      };
      const double h = 1e-6, c = std::cos(p.lat());
      const PlanePoint n1 = map(p.lat() + h, p.lon()), n0 = map(p.lat() - h, p.lon());
      const PlanePoint e1 = map(p.lat(), p.lon() + h), e0 = map(p.lat(), p.lon() - h);
      const auto s2 = singular_values((n1.x - n0.x) / (2 * h), (e1.x - e0.x) / (2 * h * c),
                                      (n1.y - n0.y) / (2 * h), (e1.y - e0.y) / (2 * h * c));
      EXPECT_NEAR(s2[0] / s2[1], K, 1e-6 * K);
      EXPECT_GT(std::abs(std::max(s2[0], 1 / s2[1]) - std::max(sv[0], 1 / sv[1])), 1e-3);
    }
  }

  TEST(AnalyzeAnnulus, PlateCarreeZeroToSixty) {
    const DistortionReport r = analyze_annulus(build_cylindrical(0), SphericalAnnulus::degrees(0, 60));
    EXPECT_NEAR(r.L, 2, 1e-12);
    EXPECT_NEAR(r.ell, 1, 1e-15);
    EXPECT_NEAR(r.v, 0.69314718055994531, 1e-9);
    EXPECT_NEAR(r.witness_L.lat(), 60 * deg, 1e-15);
    EXPECT_EQ(r.witness_ell.lat(), 0);
    EXPECT_EQ(r.grid.step, default_grid_step);
    EXPECT_EQ(r.grid.samples, 6001u);

    // Brute-force grid at 0.01 deg, computed here independently.
    double L = 0, ell = 10;
    for (int i = 0; i <= 6000; ++i) {
      const double k = 1 / std::cos(i * 0.01 * deg);
      L = std::max(L, std::max(k, 1 / k));
      ell = std::min(ell, std::max(k, 1 / k));
    }
    EXPECT_NEAR(r.v, std::log(L / ell), 1e-9);
  }

  TEST(AnalyzeAnnulus, AzimuthalPolarCap) {
    const DistortionReport r = analyze_annulus(build_azimuthal(), SphericalAnnulus::degrees(60, 90));
    EXPECT_EQ(r.ell, 1);
    EXPECT_EQ(r.witness_ell.lat(), half_pi);
    EXPECT_NEAR(r.L, 1.0471975511965977, 1e-14);
    EXPECT_NEAR(r.v, 0.046117597181290483, 1e-9);
  }

  TEST(AnalyzeAnnulus, StandardParallelsInsideGiveEllOne) {
    const ConicSpec s = build_conic_two_parallels(41.123 * deg, 57.777 * deg);
    const DistortionReport r = analyze_annulus(s, SphericalAnnulus::degrees(35, 65), deg_to_rad(1.0));
    EXPECT_NEAR(r.ell, 1, 1e-15);
    EXPECT_GE(r.L, r.ell);
    EXPECT_GE(r.v, 0);
    EXPECT_EQ(r.K_max, r.L);
  }

  TEST(AnalyzeAnnulus, Errors) {
    EXPECT_THROW(SphericalAnnulus::degrees(50, 50), DomainError);
    EXPECT_THROW(SphericalAnnulus::degrees(60, 40), DomainError);
    EXPECT_THROW(analyze_annulus(build_cylindrical(0), SphericalAnnulus::degrees(0, 60), 0), DomainError);
    EXPECT_THROW(analyze_annulus(build_conic_one_parallel(0.5), SphericalAnnulus::degrees(60, 90)),
                 DomainError);
    EXPECT_THROW(analyze_annulus(build_azimuthal(), SphericalAnnulus::degrees(-90, 0)), DomainError);
  }

  TEST(AnalyzeAnnulus, FastPathAgreesWithTwoDimensionalBruteForce) {
    const std::vector<SphericalAnnulus> regions{SphericalAnnulus::degrees(40, 70),
                                                SphericalAnnulus::degrees(-20, 35),
                                                SphericalAnnulus::degrees(10, 80)};
    std::vector<double> lons;
    for (int i = -179; i <= 180; i += 7) lons.push_back(i * deg);
    for (const ConicSpec& s : {build_conic_two_parallels(45 * deg, 66 * deg),
                               build_conic_two_parallels(-5 * deg, 30 * deg),
                               build_conic_one_parallel(57 * deg), build_azimuthal(),
                               build_cylindrical(0), build_cylindrical(50 * deg)})
      for (const SphericalAnnulus& r : regions) {
        const DistortionReport fast = analyze_candidates(s, r);
        const DistortionReport full = analyze_annulus(s, r, deg_to_rad(0.05));
        // The 2-D brute force visits every analyzed latitude at every sampled
        // longitude, using singular values of the full differential.
        std::vector<double> lats;
        for (const ProfileSample& p : sigma_profile(s, r, deg_to_rad(0.05))) lats.push_back(p.phi);
        const double brute = conicmap::testing::brute_force_v(s, lats, lons);
        EXPECT_NEAR(fast.v, brute, 1e-9) << s.label();
        EXPECT_NEAR(full.v, brute, 1e-9) << s.label();
      }
  }

  TEST(AnalyzeAnnulus, NestedRegionsAreMonotone) {
    const ConicSpec s = build_conic_two_parallels(48 * deg, 62 * deg);
    const DistortionReport a = analyze_annulus(s, SphericalAnnulus::degrees(50, 60));
    const DistortionReport b = analyze_annulus(s, SphericalAnnulus::degrees(45, 65));
    const DistortionReport c = analyze_annulus(s, SphericalAnnulus::degrees(30, 75));
    EXPECT_LE(a.L, b.L);
    EXPECT_LE(b.L, c.L);
    EXPECT_GE(a.ell, b.ell);
    EXPECT_GE(b.ell, c.ell);
  }

  TEST(CompareSpecs, OrdersByDistortionAndAnnotatesFailures) {
    const SphericalAnnulus r = SphericalAnnulus::degrees(40, 70);
    const std::vector<ConicSpec> specs{build_cylindrical(0), build_azimuthal(),
                                       build_conic_two_parallels(45.3 * deg, 66.7 * deg),
                                       build_conic_one_parallel(57 * deg)};
    const auto table = compare_specs(specs, r);
    ASSERT_EQ(table.size(), 4u);
    EXPECT_EQ(table[0].order, 2u);
    EXPECT_EQ(table[1].order, 3u);
    EXPECT_EQ(table[2].order, 1u);
    EXPECT_EQ(table[3].order, 0u);
    for (std::size_t i = 1; i < table.size(); ++i)
      EXPECT_LE(table[i - 1].report->v, table[i].report->v);

    EXPECT_EQ(compare_specs({build_azimuthal()}, r).size(), 1u);

    const auto polar = compare_specs({build_cylindrical(0), build_azimuthal()},
                                     SphericalAnnulus::degrees(60, 90));
    ASSERT_EQ(polar.size(), 2u);
    EXPECT_TRUE(polar[0].report.has_value());
    EXPECT_EQ(polar[0].spec.branch(), Branch::azimuthal);
    EXPECT_FALSE(polar[1].report.has_value());
    EXPECT_FALSE(polar[1].error.empty());
  }

  TEST(CompareSpecs, TiesBreakOnInputOrder) {
    const SphericalAnnulus r = SphericalAnnulus::degrees(10, 30);
    const auto table = compare_specs({build_cylindrical(20 * deg), build_cylindrical(20 * deg)}, r);
    EXPECT_EQ(table[0].order, 0u);
    EXPECT_EQ(table[1].order, 1u);
  }

} // namespace

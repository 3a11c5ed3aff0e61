// Test-only oracles and samplers.  Nothing here is used by the library; the
// finite-difference Jacobian and the 2x2 singular values are independent of
// the analytic (meridian, parallel) shortcut the library takes.

#pragma once

#include <conicmap/conicmap.hpp>

#include <array>
#include <cmath>
#include <random>

namespace conicmap::testing {

  // Recorded seeds for reproducible property tests.
  inline constexpr std::uint64_t triangle_seed = 20240917;
  inline constexpr std::uint64_t projection_seed = 1729;
  inline constexpr std::uint64_t jacobian_seed = 314159;

  inline GeoPoint uniform_sphere_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> z(-1, 1), lon(-pi, pi);
    return {std::asin(z(rng)), lon(rng)};
  }

  // Three independent uniform points, rejected until non-degenerate.
  inline SphericalTriangle random_triangle(std::mt19937_64& rng) {
    for (;;) {
      const GeoPoint a = uniform_sphere_point(rng), b = uniform_sphere_point(rng),
                     c = uniform_sphere_point(rng);
      try {
        SphericalTriangle t(a, b, c);
        triangle_angles(t);
        return t;
      } catch (const DomainError&) {
      }
    }
  }

  inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }

  // Central differences of forward() in the orthonormal (north, east) frame.
  inline Jacobian fd_jacobian(const ConicSpec& s, const GeoPoint& p, double h = 1e-6) {
    const double lat = p.lat(), lon = p.lon();
    const PlanePoint n1 = forward(s, GeoPoint(lat + h, lon)), n0 = forward(s, GeoPoint(lat - h, lon));
    const PlanePoint e1 = forward(s, GeoPoint(lat, lon + h)), e0 = forward(s, GeoPoint(lat, lon - h));
    const double c = std::cos(lat);
    return {(n1.x - n0.x) / (2 * h), (n1.y - n0.y) / (2 * h),
            (e1.x - e0.x) / (2 * h * c), (e1.y - e0.y) / (2 * h * c)};
  }

  // Singular values (larger first) of [[a, b], [c, d]] in closed form.
  inline std::array<double, 2> singular_values(double a, double b, double c, double d) {
    const double e = (a + d) / 2, f = (a - d) / 2, g = (c + b) / 2, h = (c - b) / 2;
    const double q = std::hypot(e, h), r = std::hypot(f, g);
    return {q + r, std::abs(q - r)};
  }

  // Columns of the Jacobian are the images of north and east unit vectors.
  inline std::array<double, 2> singular_values(const Jacobian& j) {
    return singular_values(j.x_north, j.x_east, j.y_north, j.y_east);
  }

  // Brute-force v over a (lat, lon) grid using singular values of the analytic
  // differential rather than the h = 1 shortcut.
  inline double brute_force_v(const ConicSpec& s, const std::vector<double>& lats,
                              const std::vector<double>& lons) {
    double L = 0, ell = std::numeric_limits<double>::infinity();
    for (double lat : lats)
      for (double lon : lons) {
        const auto sv = singular_values(analytic_jacobian(s, GeoPoint(lat, lon)));
        const double sigma = std::max(sv[0], 1 / sv[1]);
        L = std::max(L, sigma);
        ell = std::min(ell, sigma);
      }
    return std::log(L / ell);
  }

} // namespace conicmap::testing

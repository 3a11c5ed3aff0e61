/**
 * \file sphere.hpp
 * \brief Geodesics, midpoints and triangles on the unit sphere
 *
 * Distances and angles are evaluated from cross/dot products through atan2,
 * which keeps full relative precision for very small triangles.
 **********************************************************************/

#pragma once

#include <conicmap/angle.hpp>
#include <conicmap/error.hpp>

#include <array>
#include <cmath>
#include <string>

namespace conicmap {

  /// A position on the unit sphere.  Latitude is checked against
  /// [-pi/2, pi/2]; longitude is reduced to (-pi, pi].
  class GeoPoint {
  public:
    GeoPoint(double lat, double lon) : lat_(lat), lon_(normalize_lon(lon)) {
      if (!(std::abs(lat) <= half_pi))
        throw DomainError("latitude " + std::to_string(rad_to_deg(lat)) +
                          " deg outside [-90, 90]");
      if (!std::isfinite(lon))
        throw DomainError("longitude is not finite");
    }
    static GeoPoint degrees(double lat_deg, double lon_deg) {
      return {deg_to_rad(lat_deg), deg_to_rad(lon_deg)};
    }
    double lat() const noexcept { return lat_; }
    double lon() const noexcept { return lon_; }
    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
  private:
    double lat_, lon_;
  };

  using Vec3 = std::array<double, 3>;

  namespace detail {
    inline double dot(const Vec3& a, const Vec3& b) noexcept {
      return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    }
    inline Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
      return {a[1] * b[2] - a[2] * b[1],
              a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]};
    }
    inline double norm(const Vec3& a) noexcept {
      return std::hypot(a[0], a[1], a[2]);
    }
    // Scalar triple product a . (b x c).
    inline double triple(const Vec3& a, const Vec3& b, const Vec3& c) noexcept {
      return dot(a, cross(b, c));
    }
  } // namespace detail

  inline Vec3 to_unit_vector(const GeoPoint& p) noexcept {
    const double cl = std::cos(p.lat());
    return {cl * std::cos(p.lon()), cl * std::sin(p.lon()), std::sin(p.lat())};
  }

  inline GeoPoint from_unit_vector(const Vec3& v) {
    return {std::atan2(v[2], std::hypot(v[0], v[1])), std::atan2(v[1], v[0])};
  }

  /// Central angle between two points, in [0, pi].
  inline double geodesic_distance(const GeoPoint& p, const GeoPoint& q) noexcept {
    const Vec3 a = to_unit_vector(p), b = to_unit_vector(q);
    return std::atan2(detail::norm(detail::cross(a, b)), detail::dot(a, b));
  }

  /// Midpoint of the shorter geodesic arc.  Antipodal pairs have no unique
  /// midpoint and are rejected.
  inline GeoPoint midpoint(const GeoPoint& p, const GeoPoint& q) {
    const Vec3 a = to_unit_vector(p), b = to_unit_vector(q);
    const Vec3 s{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    if (detail::norm(s) < 1e-12)
      throw DomainError("midpoint of antipodal points is not unique");
    return from_unit_vector(s);
  }

  /// Pairwise distances below this (or above pi minus this) make a
  /// triangle degenerate.
  inline constexpr double degeneracy_threshold = 1e-9;

  /// Three vertices with pairwise distances in (threshold, pi - threshold).
  class SphericalTriangle {
  public:
    SphericalTriangle(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c)
      : v_{a, b, c} {
      for (int i = 0; i < 3; ++i) {
        const double d = geodesic_distance(v_[i], v_[(i + 1) % 3]);
        if (!(d > degeneracy_threshold && d < pi - degeneracy_threshold))
          throw DomainError("degenerate triangle: vertices coincide or are antipodal");
      }
    }
    const GeoPoint& a() const noexcept { return v_[0]; }
    const GeoPoint& b() const noexcept { return v_[1]; }
    const GeoPoint& c() const noexcept { return v_[2]; }
    const GeoPoint& vertex(int i) const noexcept { return v_[i]; }
  private:
    std::array<GeoPoint, 3> v_;
  };

  /// Interior angles at vertices a, b, c (alpha opposite side a, ...).
  struct TriangleAngles {
    double alpha, beta, gamma;
    double sum() const noexcept { return alpha + beta + gamma; }
  };

  /// Side lengths; side a is opposite angle alpha.
  struct TriangleSides {
    double a, b, c;
  };

  /// Interior angles of a triangle.  The angle at A between the arcs to B and
  /// C is atan2(|A.(BxC)|, (AxB).(AxC)).  Both terms are formed from edge
  /// vectors B - A, C - A, which keeps small triangles accurate; the triple
  /// product is unchanged by the shift.
  inline TriangleAngles triangle_angles(const SphericalTriangle& t) {
    const Vec3 a = to_unit_vector(t.a()), b = to_unit_vector(t.b()),
               c = to_unit_vector(t.c());
    auto sub = [](const Vec3& u, const Vec3& v) {
      return Vec3{u[0] - v[0], u[1] - v[1], u[2] - v[2]};
    };
    const double vol = std::abs(detail::triple(a, sub(b, a), sub(c, a)));
    // Collinear vertices (all on one great circle) span no area.
    if (vol < 1e-15)
      throw DomainError("degenerate triangle: vertices lie on one great circle");
    auto angle_at = [&](const Vec3& p, const Vec3& q, const Vec3& r) {
      return std::atan2(vol, detail::dot(detail::cross(p, sub(q, p)), detail::cross(p, sub(r, p))));
    };
    return {angle_at(a, b, c), angle_at(b, c, a), angle_at(c, a, b)};
  }

  /// Spherical excess computed from the vertices alone,
  /// tan(E/2) = |a.(bxc)| / (1 + a.b + b.c + c.a).
  inline double spherical_excess(const SphericalTriangle& t) noexcept {
    const Vec3 a = to_unit_vector(t.a()), b = to_unit_vector(t.b()),
               c = to_unit_vector(t.c());
    return 2 * std::atan2(std::abs(detail::triple(a, b, c)),
                          1 + detail::dot(a, b) + detail::dot(b, c) +
                            detail::dot(c, a));
  }

  /// Sides of the spherical triangle having the given angles.  A triangle on
  /// the sphere is fixed by its angles; the construction fails when the angle
  /// sum does not exceed two right angles, since no spherical triangle has
  /// such angles.
  inline TriangleSides solve_sides_from_angles(const TriangleAngles& ang) {
    const double al = ang.alpha, be = ang.beta, ga = ang.gamma;
    for (double x : {al, be, ga})
      if (!(x > 0 && x < pi))
        throw DomainError("each angle must lie strictly between 0 and 180 degrees");
    if (!(ang.sum() > pi))
      throw DomainError("not a spherical triangle: the angle sum must be greater "
                        "than two right angles (180 degrees)");
    // Half-angle form of the polar cosine rule:
    //   sin^2(a/2) = -cos S cos(S - alpha) / (sin beta sin gamma)
    //   cos^2(a/2) =  cos(S - beta) cos(S - gamma) / (sin beta sin gamma)
    const double s = ang.sum() / 2;
    const double cs = -std::cos(s);
    auto side = [&](double x, double y, double z) {
      const double num = cs * std::cos(s - x);
      const double den = std::cos(s - y) * std::cos(s - z);
      if (!(num > 0 && den > 0))
        throw DomainError("angles violate the polar triangle inequality; "
                          "no spherical triangle has these angles");
      return 2 * std::atan2(std::sqrt(num), std::sqrt(den));
    };
    return {side(al, be, ga), side(be, ga, al), side(ga, al, be)};
  }

  /// DE / (AC/2) where D, E are the midpoints of AB and BC.  Strictly
  /// greater than 1 on the sphere; equal to 1 in the plane.
  inline double prop27_ratio(const SphericalTriangle& t) {
    const GeoPoint d = midpoint(t.a(), t.b()), e = midpoint(t.b(), t.c());
    return geodesic_distance(d, e) / (geodesic_distance(t.a(), t.c()) / 2);
  }

} // namespace conicmap

/**
 * \file projection.hpp
 * \brief The equidistant conic family: builders, forward/inverse, scales
 *
 * Every member keeps meridians true to scale.  The conic branch maps
 *
 *   rho = C - phi,  theta = n lambda,  x = rho sin theta,  y = -rho cos theta
 *
 * so the apex sits at the plane origin and the central meridian runs down the
 * negative y axis.  The azimuthal equidistant map is the conic member
 * {n = 1, C = pi/2}.  The cylindrical branch is x = lambda cos phi_s, y = phi.
 * All lengths are in units of the sphere radius.
 **********************************************************************/

#pragma once

#include <conicmap/angle.hpp>
#include <conicmap/error.hpp>
#include <conicmap/sphere.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace conicmap {

  enum class Branch { conic, azimuthal, cylindrical };

  /// Which builder produced a spec.
  enum class Family { conic1, conic2, azimuthal, cylindrical };

  inline const char* to_string(Family f) noexcept {
    switch (f) {
    case Family::conic1: return "conic1";
    case Family::conic2: return "conic2";
    case Family::azimuthal: return "azimuthal";
    case Family::cylindrical: return "cylindrical";
    }
    return "?";
  }

  /// Builder inputs, in radians, in the order the builder took them.
  struct Provenance {
    Family family;
    std::vector<double> inputs;
  };

  struct PlanePoint {
    double x, y;
  };

  class ConicSpec;
  ConicSpec build_conic_two_parallels(double phi1, double phi2);
  ConicSpec build_conic_one_parallel(double phi0);
  ConicSpec build_azimuthal();
  ConicSpec build_cylindrical(double phi_s);

  /// Immutable parameters of one family member.  Only the builders below
  /// create specs, so the branch invariants always hold.
  class ConicSpec {
  public:
    Branch branch() const noexcept { return branch_; }
    /// Cone constant; 0 for the cylindrical branch.
    double n() const noexcept { return n_; }
    /// Apex offset: rho(phi) = C - phi.  0 for the cylindrical branch.
    double apex() const noexcept { return apex_; }
    /// Standard parallel of the cylindrical branch.
    double phi_s() const noexcept { return phi_s_; }
    const Provenance& provenance() const noexcept { return prov_; }
    bool is_conic() const noexcept { return branch_ != Branch::cylindrical; }

    /// Latitudes where the parallel scale is exactly 1 by construction.
    std::vector<double> standard_parallels() const {
      switch (prov_.family) {
      case Family::conic1: return {prov_.inputs[0]};
      case Family::conic2: return {prov_.inputs[0], prov_.inputs[1]};
      case Family::azimuthal: return {half_pi};
      case Family::cylindrical:
        if (phi_s_ == 0) return {0.0};
        return {-std::abs(phi_s_), std::abs(phi_s_)};
      }
      return {};
    }

    /// Short human-readable label, e.g. "conic2(50,65)" (degrees).
    std::string label() const {
      std::string s = to_string(prov_.family);
      if (prov_.inputs.empty()) return s;
      s += '(';
      for (std::size_t i = 0; i < prov_.inputs.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", rad_to_deg(prov_.inputs[i]));
        if (i) s += ',';
        s += buf;
      }
      return s + ')';
    }

  private:
    ConicSpec(Branch b, double n, double apex, double phi_s, Provenance p)
      : branch_(b), n_(n), apex_(apex), phi_s_(phi_s), prov_(std::move(p)) {}

    friend ConicSpec build_conic_two_parallels(double, double);
    friend ConicSpec build_conic_one_parallel(double);
    friend ConicSpec build_azimuthal();
    friend ConicSpec build_cylindrical(double);

    Branch branch_;
    double n_, apex_, phi_s_;
    Provenance prov_;
  };

  /// Below this gap the two-parallel builder falls back to the tangent cone.
  inline constexpr double coincident_parallel_gap = 1e-8;

  /// Smallest accepted cone constant.  The apex sits about 1/n from the map,
  /// and rho = C - phi keeps 1e-11 absolute resolution only while C < 1e5.
  inline constexpr double min_cone_constant = 1e-5;

  /// Tangent cone touching the sphere along phi0: n = sin phi0,
  /// C = phi0 + cot phi0.
  inline ConicSpec build_conic_one_parallel(double phi0) {
    if (!(std::abs(phi0) < half_pi))
      throw DomainError("tangent parallel must be strictly between the poles "
                        "(use the azimuthal projection at a pole)");
    if (phi0 == 0)
      throw DomainError("no tangent cone at the equator (use the cylindrical projection)");
    const double n = std::sin(phi0);
    if (!(n >= min_cone_constant && n <= 1))
      throw DomainError("cone constant " + std::to_string(n) +
                        " outside [1e-5, 1]: tangent parallel must lie north of the equator "
                        "(use the cylindrical projection near it)");
    return {Branch::conic, n, phi0 + std::cos(phi0) / n, 0, {Family::conic1, {phi0}}};
  }

  /// Secant cone with true-scale parallels phi1 < phi2:
  /// n = (cos phi1 - cos phi2) / (phi2 - phi1), C = phi1 + cos phi1 / n.
  inline ConicSpec build_conic_two_parallels(double phi1, double phi2) {
    if (!(phi1 > -half_pi && phi2 < half_pi))
      throw DomainError("standard parallels must lie strictly between the poles");
    if (!(phi1 <= phi2))
      throw DomainError("standard parallels must satisfy phi1 < phi2");
    if (phi2 - phi1 < coincident_parallel_gap) {
      ConicSpec s = build_conic_one_parallel(phi1);
      s.prov_ = {Family::conic2, {phi1, phi2}};
      return s;
    }
    // cos a - cos b = 2 sin((a+b)/2) sin((b-a)/2), free of cancellation.
    const double h = (phi2 - phi1) / 2;
    const double n = std::sin(phi1 + h) * (std::sin(h) / h);
    if (!(n >= min_cone_constant && n <= 1))
      throw DomainError("cone constant " + std::to_string(n) +
                        " outside [1e-5, 1]: parallels must be centred north of the equator "
                        "(use the cylindrical projection for bands centred on it)");
    return {Branch::conic, n, phi1 + std::cos(phi1) / n, 0,
            {Family::conic2, {phi1, phi2}}};
  }

  inline ConicSpec build_azimuthal() {
    return {Branch::azimuthal, 1, half_pi, 0, {Family::azimuthal, {}}};
  }

  inline ConicSpec build_cylindrical(double phi_s) {
    if (!(std::abs(phi_s) < half_pi))
      throw DomainError("cylindrical standard parallel must be strictly between the poles");
    return {Branch::cylindrical, 0, 0, phi_s, {Family::cylindrical, {phi_s}}};
  }

  namespace detail {
    // Forward map on raw coordinates; longitude is not normalized so the
    // edges of the cut (lambda = +-pi) can be drawn.
    inline PlanePoint forward_raw(const ConicSpec& s, double lat, double lon) {
      if (s.branch() == Branch::cylindrical)
        return {lon * std::cos(s.phi_s()), lat};
      const double rho = s.apex() - lat;
      if (rho < 0)
        throw DomainError("latitude beyond apex");
      const double theta = s.n() * lon;
      return {rho * std::sin(theta), -rho * std::cos(theta)};
    }

    // x / sin(x), stable near 0.
    inline double x_over_sin(double x) noexcept {
      return std::abs(x) < 1e-8 ? 1 + x * x / 6 : x / std::sin(x);
    }
  } // namespace detail

  inline PlanePoint forward(const ConicSpec& s, const GeoPoint& p) {
    return detail::forward_raw(s, p.lat(), p.lon());
  }

  /// Inverse of forward on the cut sphere.
  inline GeoPoint inverse(const ConicSpec& s, const PlanePoint& q) {
    if (!(std::isfinite(q.x) && std::isfinite(q.y)))
      throw DomainError("plane point is not finite");
    if (s.branch() == Branch::cylindrical) {
      const double lon = q.x / std::cos(s.phi_s());
      if (!(std::abs(lon) <= pi) || !(std::abs(q.y) <= half_pi))
        throw DomainError("plane point outside the image of the map");
      return {q.y, lon};
    }
    const double rho = std::hypot(q.x, q.y);
    if (rho == 0) {
      if (s.branch() == Branch::azimuthal) return {half_pi, 0};
      throw DomainError("the apex is not the image of any point");
    }
    const double lat = s.apex() - rho;
    const double lon = std::atan2(q.x, -q.y) / s.n();
    // The tolerance admits rounding at the map boundary, not real overshoot.
    if (!(std::abs(lat) <= half_pi * (1 + 1e-15)) || !(std::abs(lon) <= pi * (1 + 1e-15)))
      throw DomainError("plane point outside the image of the map");
    return {std::clamp(lat, -half_pi, half_pi), lon};
  }

  /// Meridian scale h and parallel scale k at a latitude.
  struct MeridianParallelScale {
    double h, k;
  };

  /// Parallel scale k(phi); h is identically 1 for the whole family.
  inline double parallel_scale(const ConicSpec& s, double phi) {
    if (s.branch() == Branch::azimuthal) {
      // k = c / sin c in terms of colatitude; finite at the pole.
      const double c = half_pi - phi;
      if (!(c >= 0 && c < pi))
        throw DomainError("latitude outside the azimuthal domain");
      return detail::x_over_sin(c);
    }
    if (!(std::abs(phi) < half_pi))
      throw DomainError("parallel scale is unbounded at the poles");
    if (s.branch() == Branch::cylindrical)
      return std::cos(s.phi_s()) / std::cos(phi);
    if (!(phi < s.apex()))
      throw DomainError("latitude beyond apex");
    return s.n() * (s.apex() - phi) / std::cos(phi);
  }

  inline MeridianParallelScale scale_factors_meridian_parallel(const ConicSpec& s,
                                                               double phi) {
    return {1.0, parallel_scale(s, phi)};
  }

  /// Angular distance C - pi/2 beyond the pole at which the meridian images
  /// meet.
  inline double apex_colatitude(const ConicSpec& s) {
    if (!s.is_conic())
      throw DomainError("apex colatitude is defined for conic specs only");
    return s.apex() - half_pi;
  }

  struct RhodesDiagnostic {
    double map_ratio;   ///< n (C - phi): parallel-degree over meridian-degree on the map
    double true_ratio;  ///< cos phi: the same ratio on the sphere
  };

  /// Ratio of a degree of parallel to a degree of meridian at phi, on the map
  /// and on the sphere.  The classical stipulation at Rhodes (36 deg) is 4/5.
  inline RhodesDiagnostic rhodes_diagnostic(const ConicSpec& s, double phi) {
    if (!s.is_conic())
      throw DomainError("rhodes diagnostic is defined for conic specs only");
    if (!(std::abs(phi) < half_pi && phi < s.apex()))
      throw DomainError("latitude outside the map domain");
    return {s.n() * (s.apex() - phi), std::cos(phi)};
  }

  inline constexpr double default_rhodes_lat_deg = 36;
  inline constexpr double default_thule_lat_deg = 63;

} // namespace conicmap

/**
 * \file angle.hpp
 * \brief Degree/radian conversion and longitude normalization
 **********************************************************************/

#pragma once

#include <cmath>
#include <numbers>

namespace conicmap {

  inline constexpr double pi = std::numbers::pi;
  inline constexpr double half_pi = std::numbers::pi / 2;

  constexpr double deg_to_rad(double deg) noexcept { return deg * (pi / 180); }
  constexpr double rad_to_deg(double rad) noexcept { return rad * (180 / pi); }

  /// Reduce a longitude in radians to (-pi, pi].
  inline double normalize_lon(double lon) noexcept {
    double r = std::remainder(lon, 2 * pi);   // [-pi, pi]
    return r == -pi ? pi : r;
  }

} // namespace conicmap

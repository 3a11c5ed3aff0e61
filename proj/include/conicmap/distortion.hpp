/**
 * \file distortion.hpp
 * \brief Differentials, Tissot ellipses and metrical distortion over annuli
 *
 * For a map f and a point x, M(x) and m(x) are the largest and smallest
 * stretch of df over unit tangent vectors.  The infinitesimal bi-Lipschitz
 * constant is sigma = max(M, 1/m), the quasiconformal dilatation is K = M/m,
 * and over a region L = sup sigma, ell = inf sigma, v = log(L / ell).
 *
 * Every member of the family has a differential that is diagonal in the
 * (meridian, parallel) frame with stretches h = 1 and k(phi), so M, m, sigma
 * and K depend on latitude only.  On an annulus the extrema of sigma are
 * attained at the boundary parallels, at the standard parallels (k = 1) or
 * at the interior minimum of k, since k decreases then increases between
 * those points.  analyze_annulus evaluates those candidates and also sweeps a
 * uniform latitude grid as a guard.
 **********************************************************************/

#pragma once

#include <conicmap/angle.hpp>
#include <conicmap/error.hpp>
#include <conicmap/projection.hpp>
#include <conicmap/sphere.hpp>

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conicmap {

  /// Images of the unit tangent vectors pointing north (along the meridian)
  /// and east (along the parallel).
  struct Jacobian {
    double x_north, y_north, x_east, y_east;
    double det() const noexcept { return x_north * y_east - x_east * y_north; }
  };

  struct ScaleFactors {
    double M, m, sigma, K;
    GeoPoint at;
  };

  struct TissotEllipse {
    PlanePoint center;
    double semi_major, semi_minor;
    /// Direction of the major axis in the plane frame, in (-pi/2, pi/2].
    double orientation;
  };

  /// Region between two parallels, optionally restricted in longitude.
  class SphericalAnnulus {
  public:
    SphericalAnnulus(double phi_south, double phi_north,
                     double lon_west = -pi, double lon_east = pi)
      : s_(phi_south), n_(phi_north), w_(lon_west), e_(lon_east) {
      if (!(phi_south < phi_north))
        throw DomainError("empty annulus: southern bound must be below the northern bound");
      if (!(phi_south >= -half_pi && phi_north <= half_pi))
        throw DomainError("annulus latitudes must lie within [-90, 90] degrees");
      if (!(lon_west < lon_east && lon_west >= -pi && lon_east <= pi))
        throw DomainError("annulus longitudes must satisfy -180 <= west < east <= 180");
    }
    static SphericalAnnulus degrees(double south, double north) {
      return {deg_to_rad(south), deg_to_rad(north)};
    }
    double south() const noexcept { return s_; }
    double north() const noexcept { return n_; }
    double west() const noexcept { return w_; }
    double east() const noexcept { return e_; }
    double width() const noexcept { return n_ - s_; }
    double mid_lon() const noexcept { return w_ + (e_ - w_) / 2; }
    bool contains_lat(double phi) const noexcept { return phi >= s_ && phi <= n_; }
  private:
    double s_, n_, w_, e_;
  };

  struct GridRecord {
    double step;             ///< latitude grid step (radians); 0 for candidate-only evaluation
    std::size_t samples;     ///< latitudes evaluated, grid plus candidates
  };

  struct DistortionReport {
    double L, ell, v, K_max;
    GeoPoint witness_L, witness_ell;
    GridRecord grid;
  };

  /// Analytic differential in the orthonormal (north, east) frame.
  inline Jacobian analytic_jacobian(const ConicSpec& s, const GeoPoint& p) {
    if (!(std::abs(p.lat()) < half_pi))
      throw DomainError("the tangent frame is singular at the poles");
    const double k = parallel_scale(s, p.lat());
    if (s.branch() == Branch::cylindrical)
      return {0, 1, k, 0};
    const double theta = s.n() * p.lon();
    const double st = std::sin(theta), ct = std::cos(theta);
    return {-st, ct, k * ct, k * st};
  }

  inline ScaleFactors scale_point(const ConicSpec& s, const GeoPoint& p) {
    const double k = parallel_scale(s, p.lat());
    if (!(k > 0 && std::isfinite(k)))
      throw DomainError("singular differential");
    const double M = std::max(1.0, k), m = std::min(1.0, k);
    return {M, m, std::max(M, 1 / m), M / m, p};
  }

  inline TissotEllipse tissot(const ConicSpec& s, const GeoPoint& p) {
    const Jacobian j = analytic_jacobian(s, p);
    const ScaleFactors f = scale_point(s, p);
    double orient = 0;
    if (std::abs(f.M - f.m) > 1e-14 * f.M) {
      // Major axis follows the parallel when k > 1, the meridian when k < 1.
      orient = f.M > 1 ? std::atan2(j.y_east, j.x_east)
                       : std::atan2(j.y_north, j.x_north);
      if (orient > half_pi) orient -= pi;
      else if (orient <= -half_pi) orient += pi;
    }
    return {forward(s, p), f.M, f.m, orient};
  }

  namespace detail {

    inline void check_region(const ConicSpec& s, const SphericalAnnulus& r) {
      constexpr double margin = 1e-9;
      if (!(r.south() > -half_pi + margin))
        throw DomainError("annulus must stay away from the south pole");
      if (s.branch() != Branch::azimuthal && !(r.north() < half_pi - margin))
        throw DomainError("annulus must stay away from the north pole for " +
                          std::string(to_string(s.provenance().family)));
    }

    // Latitude of the minimum of k over [lo, hi].  For conic members k' has
    // the sign of g(phi) = (C - phi) sin phi - cos phi, which is increasing.
    inline double k_minimum_lat(const ConicSpec& s, double lo, double hi) {
      if (s.branch() == Branch::cylindrical)
        return std::clamp(0.0, lo, hi);
      const double C = s.apex();
      auto g = [C](double phi) { return (C - phi) * std::sin(phi) - std::cos(phi); };
      const double glo = g(lo), ghi = g(hi);
      if (glo >= 0) return lo;
      if (ghi <= 0) return hi;
      std::uintmax_t iters = 200;
      auto r = boost::math::tools::toms748_solve(
        g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
      return r.first + (r.second - r.first) / 2;
    }

    // Latitudes where the extrema of sigma over [south, north] can occur.
    inline std::vector<double> candidate_lats(const ConicSpec& s,
                                              const SphericalAnnulus& r) {
      std::vector<double> c{r.south(), r.north(),
                            k_minimum_lat(s, r.south(), r.north())};
      for (double p : s.standard_parallels())
        if (r.contains_lat(p)) c.push_back(p);
      return c;
    }

    struct SigmaSample {
      double phi, k, sigma, K;
    };

    inline SigmaSample sample_at(const ConicSpec& s, double phi, double lon) {
      const ScaleFactors f = scale_point(s, GeoPoint(phi, lon));
      return {phi, parallel_scale(s, phi), f.sigma, f.K};
    }

    inline std::vector<double> sorted_unique(std::vector<double> v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    }

    // Latitudes evaluated by analyze_annulus: uniform grid from the southern
    // bound, the northern bound, and the analytic candidates.
    inline std::vector<double> sample_lats(const ConicSpec& s, const SphericalAnnulus& r,
                                           double grid_step) {
      std::vector<double> lats = candidate_lats(s, r);
      const auto count = static_cast<std::size_t>(std::floor(r.width() / grid_step));
      for (std::size_t i = 0; i <= count; ++i) {
        const double phi = r.south() + static_cast<double>(i) * grid_step;
        if (phi < r.north()) lats.push_back(phi);
      }
      return sorted_unique(std::move(lats));
    }

    // Deterministic reduction in ascending latitude order; the first extremum
    // wins ties.
    inline DistortionReport reduce(const ConicSpec& s, const SphericalAnnulus& r,
                                   const std::vector<double>& lats, double step) {
      const double lon = r.mid_lon();
      SigmaSample hi = sample_at(s, lats.front(), lon), lo = hi;
      double kmax = hi.K;
      for (std::size_t i = 1; i < lats.size(); ++i) {
        const SigmaSample x = sample_at(s, lats[i], lon);
        if (x.sigma > hi.sigma) hi = x;
        if (x.sigma < lo.sigma) lo = x;
        kmax = std::max(kmax, x.K);
      }
      return {hi.sigma, lo.sigma, std::log(hi.sigma / lo.sigma), kmax,
              GeoPoint(hi.phi, lon), GeoPoint(lo.phi, lon), {step, lats.size()}};
    }

  } // namespace detail

  inline constexpr double default_grid_step = deg_to_rad(0.01);

  /// Extrema of sigma over the annulus and the metrical distortion v.
  inline DistortionReport analyze_annulus(const ConicSpec& s, const SphericalAnnulus& r,
                                          double grid_step = default_grid_step) {
    if (!(grid_step > 0))
      throw DomainError("grid step must be positive");
    detail::check_region(s, r);
    return detail::reduce(s, r, detail::sample_lats(s, r, grid_step), grid_step);
  }

  /// Same as analyze_annulus but from the analytic candidates alone.
  inline DistortionReport analyze_candidates(const ConicSpec& s, const SphericalAnnulus& r) {
    detail::check_region(s, r);
    return detail::reduce(s, r, detail::sorted_unique(detail::candidate_lats(s, r)), 0);
  }

  struct ProfileSample {
    double phi, k, sigma, K;
  };

  /// Per-latitude samples in ascending order, as used by analyze_annulus.
  inline std::vector<ProfileSample> sigma_profile(const ConicSpec& s, const SphericalAnnulus& r,
                                                  double grid_step = default_grid_step) {
    if (!(grid_step > 0))
      throw DomainError("grid step must be positive");
    detail::check_region(s, r);
    std::vector<ProfileSample> out;
    for (double phi : detail::sample_lats(s, r, grid_step)) {
      const auto x = detail::sample_at(s, phi, r.mid_lon());
      out.push_back({x.phi, x.k, x.sigma, x.K});
    }
    return out;
  }

  struct ComparisonRow {
    ConicSpec spec;
    std::optional<DistortionReport> report;
    std::string error;   ///< set when the spec could not be analyzed
    std::size_t order;   ///< position in the input list
  };

  /// Analyze each spec on the region.  Rows are ordered by v, then K_max,
  /// then input order; specs that fail are kept, annotated, at the end.
  inline std::vector<ComparisonRow> compare_specs(const std::vector<ConicSpec>& specs,
                                                  const SphericalAnnulus& r,
                                                  double grid_step = default_grid_step) {
    std::vector<ComparisonRow> rows;
    rows.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      try {
        rows.push_back({specs[i], analyze_annulus(specs[i], r, grid_step), {}, i});
      } catch (const DomainError& e) {
        rows.push_back({specs[i], std::nullopt, e.what(), i});
      }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
      if (a.report.has_value() != b.report.has_value()) return a.report.has_value();
      if (!a.report) return a.order < b.order;
      if (a.report->v != b.report->v) return a.report->v < b.report->v;
      if (a.report->K_max != b.report->K_max) return a.report->K_max < b.report->K_max;
      return a.order < b.order;
    });
    return rows;
  }

} // namespace conicmap

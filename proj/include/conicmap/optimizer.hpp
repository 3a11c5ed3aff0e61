/**
 * \file optimizer.hpp
 * \brief Standard-parallel selection minimizing metrical distortion
 *
 * Each search runs an exhaustive grid over the parameters (standard parallels
 * restricted to the annulus), then refines the grid incumbent by golden
 * section inside the neighbouring grid cells.  For two parallels the
 * refinement is nested: the outer search moves phi1, the inner one finds the
 * best phi2 for that phi1.  The objective is a maximum of smooth functions,
 * so it has a kink at the optimum; nested line searches converge there where
 * alternating coordinate passes can stall on a ridge.
 *
 * At the two-parallel optimum the parallel scale equioscillates:
 * k(south) = k(north) = 1 / k_min.  The certificate reports how far the
 * result is from that condition.
 **********************************************************************/

#pragma once

#include <conicmap/angle.hpp>
#include <conicmap/distortion.hpp>
#include <conicmap/error.hpp>
#include <conicmap/numeric.hpp>
#include <conicmap/projection.hpp>

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace conicmap {

  struct OptimizerOptions {
    double coarse_step = deg_to_rad(0.25);   ///< exhaustive grid spacing
    double tolerance = 1e-10;                ///< final bracket width (radians)
    bool record_trace = false;
  };

  /// One objective evaluation.  p2 is NaN for one-parameter families.
  struct TraceEntry {
    double p1, p2, v;
  };

  struct OptimizationResult {
    ConicSpec best_spec;
    double v_star;
    double certificate;
    std::size_t evaluations;
    std::vector<TraceEntry> search_trace;
  };

  namespace detail {

    inline constexpr double infeasible = std::numeric_limits<double>::infinity();

    inline void check_search_region(const SphericalAnnulus& r, double step) {
      if (!(r.south() > -half_pi && r.north() < half_pi))
        throw DomainError("annulus must lie strictly between the poles");
      if (!(step > 0))
        throw DomainError("search grid step must be positive");
      if (r.width() < 2 * step)
        throw DomainError("annulus is narrower than two search grid steps");
    }

    // south, south + step, ..., and the northern bound.
    inline std::vector<double> grid_points(double lo, double hi, double step) {
      std::vector<double> pts;
      for (std::size_t i = 0;; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        if (x >= hi - 1e-9 * step) break;
        pts.push_back(x);
      }
      pts.push_back(hi);
      return pts;
    }

    // Objective wrapper counting evaluations and recording the trace.
    template <class Build>
    class Objective {
    public:
      Objective(Build build, const SphericalAnnulus& r, bool record)
        : build_(std::move(build)), region_(r), trace_(record) {}

      double operator()(double p1, double p2 = std::numeric_limits<double>::quiet_NaN()) {
        ++evaluations;
        double v = infeasible;
        try {
          v = analyze_candidates(build_(p1, p2), region_).v;
        } catch (const DomainError&) {
        }
        if (trace_) trace.push_back({p1, p2, v});
        return v;
      }

      std::size_t evaluations = 0;
      std::vector<TraceEntry> trace;

    private:
      Build build_;
      SphericalAnnulus region_;
      bool trace_;
    };

    // Two largest sigma values over the candidate latitudes should agree at a
    // one-parameter optimum.
    inline double top_two_mismatch(const ConicSpec& s, const SphericalAnnulus& r) {
      std::vector<double> sig;
      for (double phi : sorted_unique(candidate_lats(s, r)))
        sig.push_back(scale_point(s, GeoPoint(phi, 0)).sigma);
      std::sort(sig.begin(), sig.end(), std::greater<>());
      return sig.size() < 2 ? 0 : sig[0] - sig[1];
    }

    template <class Build>
    OptimizationResult one_parameter_search(Build build, const SphericalAnnulus& r,
                                            const OptimizerOptions& opt) {
      check_search_region(r, opt.coarse_step);
      Objective obj([&build](double p, double) { return build(p); }, r, opt.record_trace);
      const std::vector<double> pts = grid_points(r.south(), r.north(), opt.coarse_step);
      std::size_t best = 0;
      double vbest = infeasible;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double v = obj(pts[i]);
        if (v < vbest) { vbest = v; best = i; }
      }
      if (vbest == infeasible)
        throw DomainError("no feasible parameter in the annulus");
      const double lo = pts[best == 0 ? 0 : best - 1];
      const double hi = pts[std::min(best + 1, pts.size() - 1)];
      const ScalarMinimum m = golden_section([&obj](double p) { return obj(p); }, lo, hi,
                                             opt.tolerance);
      double p = pts[best];
      if (m.fx < vbest) { p = m.x; vbest = m.fx; }
      ConicSpec spec = build(p);
      const double v = analyze_candidates(spec, r).v;
      const double cert = top_two_mismatch(spec, r);
      return {std::move(spec), v, cert, obj.evaluations, std::move(obj.trace)};
    }

  } // namespace detail

  /// Max pairwise mismatch of k(south), k(north) and 1/k_min.
  inline double equioscillation_residual(const ConicSpec& s, const SphericalAnnulus& r) {
    const double ks = parallel_scale(s, r.south()), kn = parallel_scale(s, r.north());
    const double kinv = 1 / parallel_scale(s, detail::k_minimum_lat(s, r.south(), r.north()));
    return std::max({std::abs(ks - kn), std::abs(ks - kinv), std::abs(kn - kinv)});
  }

  /// Best two-parallel conic on the annulus; both parallels inside it.
  inline OptimizationResult optimize_two_parallels(const SphericalAnnulus& r,
                                                   const OptimizerOptions& opt = {}) {
    detail::check_search_region(r, opt.coarse_step);
    detail::Objective obj(
      [](double p1, double p2) { return build_conic_two_parallels(p1, p2); }, r,
      opt.record_trace);
    const std::vector<double> pts = detail::grid_points(r.south(), r.north(), opt.coarse_step);
    const std::size_t last = pts.size() - 1;

    std::size_t bi = 0, bj = 0;
    double vbest = detail::infeasible;
    for (std::size_t i = 0; i <= last; ++i)
      for (std::size_t j = i; j <= last; ++j) {
        const double v = obj(pts[i], pts[j]);
        if (v < vbest) { vbest = v; bi = i; bj = j; }
      }
    if (vbest == detail::infeasible)
      throw DomainError("no feasible pair of standard parallels in the annulus");

    const double lo1 = pts[bi == 0 ? 0 : bi - 1], hi1 = pts[std::min(bi + 1, last)];
    const double lo2 = pts[bj == 0 ? 0 : bj - 1], hi2 = pts[std::min(bj + 1, last)];
    auto inner = [&](double p1) {
      return golden_section([&](double p2) { return obj(p1, p2); },
                            std::max(p1, lo2), std::max(p1, hi2), opt.tolerance);
    };
    const ScalarMinimum outer =
      golden_section([&](double p1) { return inner(p1).fx; }, lo1, hi1, opt.tolerance);

    double p1 = pts[bi], p2 = pts[bj];
    if (outer.fx < vbest) {
      const ScalarMinimum in = inner(outer.x);
      if (in.fx < vbest) { p1 = outer.x; p2 = in.x; }
    }
    ConicSpec spec = build_conic_two_parallels(p1, p2);
    const double v = analyze_candidates(spec, r).v;
    const double cert = equioscillation_residual(spec, r);
    return {std::move(spec), v, cert, obj.evaluations, std::move(obj.trace)};
  }

  /// Best tangent cone with its tangent parallel inside the annulus.
  inline OptimizationResult optimize_one_parallel(const SphericalAnnulus& r,
                                                  const OptimizerOptions& opt = {}) {
    return detail::one_parameter_search(
      [](double p) { return build_conic_one_parallel(p); }, r, opt);
  }

  /// Best equidistant cylindrical map with its standard parallel inside the
  /// annulus.
  inline OptimizationResult optimize_cylindrical(const SphericalAnnulus& r,
                                                 const OptimizerOptions& opt = {}) {
    return detail::one_parameter_search(
      [](double p) { return build_cylindrical(p); }, r, opt);
  }

  /// Accepted mismatch between the requested and attained apex colatitude.
  inline constexpr double apex_tolerance = deg_to_rad(0.01);

  /// Two-parallel conic with parallels placed symmetrically about the middle
  /// of the annulus whose apex lies target radians beyond the pole.  The
  /// spacing is scanned from zero (tangent cone) to the full annulus width,
  /// then a sign change of the residual is refined by bracketing.
  inline ConicSpec solve_apex_offset(double target, const SphericalAnnulus& r) {
    if (!(target > 0 && target < deg_to_rad(45)))
      throw DomainError("target apex colatitude must lie in (0, 45) degrees");
    if (!(r.south() > -half_pi && r.north() < half_pi))
      throw DomainError("annulus must lie strictly between the poles");
    const double mid = r.south() + r.width() / 2, half = r.width() / 2;
    auto build = [&](double s) {
      return build_conic_two_parallels(std::max(mid - s, r.south()), std::min(mid + s, r.north()));
    };
    auto residual = [&](double s) { return apex_colatitude(build(s)) - target; };

    constexpr int samples = 400;
    double best_s = 0, best_abs = detail::infeasible;
    double amin = detail::infeasible, amax = -detail::infeasible;
    double prev_s = 0, prev_r = 0;
    bool have_prev = false;
    for (int i = 0; i <= samples; ++i) {
      const double s = half * i / samples;
      double res;
      try {
        res = residual(s);
      } catch (const DomainError&) {
        have_prev = false;
        continue;
      }
      amin = std::min(amin, res + target);
      amax = std::max(amax, res + target);
      if (std::abs(res) < best_abs) { best_abs = std::abs(res); best_s = s; }
      if (have_prev && (prev_r < 0) != (res < 0)) {
        std::uintmax_t iters = 200;
        auto br = boost::math::tools::toms748_solve(
          residual, prev_s, s, prev_r, res,
          boost::math::tools::eps_tolerance<double>(50), iters);
        return build(br.first + (br.second - br.first) / 2);
      }
      prev_s = s; prev_r = res; have_prev = true;
    }
    if (best_abs <= apex_tolerance)
      return build(best_s);
    if (amin > amax)
      throw DomainError("no conic spec can be built in this annulus");
    throw DomainError("apex colatitude " + std::to_string(rad_to_deg(target)) +
                      " deg unreachable in this annulus; attained range [" +
                      std::to_string(rad_to_deg(amin)) + ", " +
                      std::to_string(rad_to_deg(amax)) + "] deg");
  }

} // namespace conicmap

/**
 * \file svg.hpp
 * \brief Deterministic SVG rendering of graticule, polylines and Tissot
 *        ellipses
 *
 * Geometry is built in plane units first, then mapped to the canvas by a
 * uniform scale-to-fit with a 5% margin and the y axis flipped.  Every
 * coordinate is written with six decimals, so identical inputs give
 * byte-identical documents.
 **********************************************************************/

#pragma once

#include <conicmap/angle.hpp>
#include <conicmap/csv.hpp>
#include <conicmap/distortion.hpp>
#include <conicmap/error.hpp>
#include <conicmap/format.hpp>
#include <conicmap/projection.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace conicmap {

  struct RenderConfig {
    double graticule_deg = 30;
    double tissot_deg = 30;
    double tissot_scale = 0.04;     ///< radius, in sphere radii, of the circle whose image is drawn
    double canvas = 1000;           ///< width and height of the square canvas
    double lat_south_deg = -90;     ///< rendered latitude band
    double lat_north_deg = 90;
    std::string graticule_class = "graticule";
    std::string line_class = "coast";
    std::string tissot_class = "tissot";
  };

  namespace detail {

    inline bool divides_360(double step) {
      if (!(step > 0 && step <= 360)) return false;
      const double q = 360 / step;
      return std::abs(q - std::round(q)) < 1e-9;
    }

    inline void check_config(const RenderConfig& c) {
      if (!divides_360(c.graticule_deg))
        throw DomainError("graticule spacing must divide 360 evenly");
      if (!divides_360(c.tissot_deg))
        throw DomainError("tissot spacing must divide 360 evenly");
      if (!(c.tissot_scale > 0))
        throw DomainError("tissot display scale must be positive");
      if (!(c.canvas > 0))
        throw DomainError("canvas size must be positive");
      if (!(c.lat_south_deg >= -90 && c.lat_south_deg < c.lat_north_deg &&
            c.lat_north_deg <= 90))
        throw DomainError("render band must satisfy -90 <= south < north <= 90");
    }

    // Integer multiples of step (degrees) within [lo, hi].
    inline std::vector<double> multiples(double step, double lo, double hi) {
      std::vector<double> v;
      const auto first = static_cast<long>(std::ceil(lo / step - 1e-9));
      const auto last = static_cast<long>(std::floor(hi / step + 1e-9));
      for (long i = first; i <= last; ++i) v.push_back(static_cast<double>(i) * step);
      return v;
    }

    struct Box {
      double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
      double xmax = -xmin, ymax = -xmin;
      void add(PlanePoint p) {
        xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
      }
    };

    struct ParallelElem {
      double lat;
      bool full_circle;            // azimuthal: closed circle about the apex
      bool straight;               // cylindrical: horizontal segment
      PlanePoint a, b;             // end points
      double radius;
      bool large_arc;
    };

    struct MeridianElem {
      double lon;
      PlanePoint a, b;
    };

    struct LineElem {
      std::string id;
      std::vector<PlanePoint> pts;
    };

    struct EllipseElem {
      GeoPoint at;
      TissotEllipse e;
    };

    inline double collinearity(PlanePoint p, PlanePoint q, PlanePoint r) {
      const double cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
      const double len = std::max(std::hypot(r.x - p.x, r.y - p.y), 1.0);
      return std::abs(cross) / len;
    }

  } // namespace detail

  /// SVG document for the spec.  Elements whose projection fails or whose
  /// sampled geometry breaks the graticule invariants are skipped and counted
  /// in the header comment.
  inline std::string render_svg(const ConicSpec& spec, const std::vector<Polyline>& lines,
                                const RenderConfig& cfg, bool with_tissot = false) {
    using namespace detail;
    check_config(cfg);
    constexpr double geometry_tol = 1e-9;
    const double south = deg_to_rad(cfg.lat_south_deg), north = deg_to_rad(cfg.lat_north_deg);
    const bool conic = spec.is_conic();
    std::size_t skipped = 0;
    Box box;

    std::vector<ParallelElem> parallels;
    for (double lat_deg : multiples(cfg.graticule_deg, cfg.lat_south_deg, cfg.lat_north_deg)) {
      if (std::abs(lat_deg) >= 90) continue;
      const double lat = deg_to_rad(lat_deg);
      try {
        ParallelElem el{lat, false, !conic, {}, {}, 0, false};
        el.a = detail::forward_raw(spec, lat, -pi);
        el.b = detail::forward_raw(spec, lat, pi);
        if (conic) {
          el.radius = spec.apex() - lat;
          el.full_circle = spec.n() == 1;
          el.large_arc = spec.n() > 0.5;
          // Sample the arc for the extent and check it stays on one circle.
          bool ok = true;
          for (int i = 0; i <= 720; ++i) {
            const PlanePoint q = detail::forward_raw(spec, lat, -pi + 2 * pi * i / 720);
            if (i % 360 == 0 || i == 180)
              ok = ok && std::abs(std::hypot(q.x, q.y) - el.radius) <= geometry_tol;
            box.add(q);
          }
          if (!ok) { ++skipped; continue; }
        } else {
          const PlanePoint m = detail::forward_raw(spec, lat, 0);
          if (collinearity(el.a, m, el.b) > geometry_tol) { ++skipped; continue; }
          box.add(el.a);
          box.add(el.b);
        }
        parallels.push_back(el);
      } catch (const DomainError&) {
        ++skipped;
      }
    }

    std::vector<MeridianElem> meridians;
    for (double lon_deg : multiples(cfg.graticule_deg, -180, 180)) {
      const double lon = deg_to_rad(lon_deg);
      try {
        MeridianElem el{lon, detail::forward_raw(spec, south, lon),
                        detail::forward_raw(spec, north, lon)};
        const PlanePoint m = detail::forward_raw(spec, (south + north) / 2, lon);
        bool ok = collinearity(el.a, m, el.b) <= geometry_tol;
        if (conic) ok = ok && collinearity(PlanePoint{0, 0}, el.a, el.b) <= geometry_tol;
        if (!ok) { ++skipped; continue; }
        box.add(el.a);
        box.add(el.b);
        meridians.push_back(el);
      } catch (const DomainError&) {
        ++skipped;
      }
    }

    // Polylines break at vertices outside the band or the projection domain,
    // and where a segment jumps across the longitude cut.
    std::vector<LineElem> runs;
    for (const Polyline& pl : lines) {
      LineElem cur{pl.id, {}};
      double prev_lon = 0;
      auto flush = [&]() {
        if (cur.pts.size() >= 2) runs.push_back(cur);
        cur.pts.clear();
      };
      for (const GeoPoint& p : pl.points) {
        if (p.lat() < south || p.lat() > north) { flush(); continue; }
        PlanePoint q;
        try {
          q = forward(spec, p);
        } catch (const DomainError&) {
          flush();
          continue;
        }
        if (!cur.pts.empty() && std::abs(p.lon() - prev_lon) > pi) flush();
        cur.pts.push_back(q);
        prev_lon = p.lon();
        box.add(q);
      }
      flush();
    }

    std::vector<EllipseElem> ellipses;
    if (with_tissot) {
      for (double lat_deg : multiples(cfg.tissot_deg, cfg.lat_south_deg, cfg.lat_north_deg)) {
        if (std::abs(lat_deg) >= 90) continue;
        for (double lon_deg : multiples(cfg.tissot_deg, -180, 180)) {
          if (lon_deg <= -180) continue;
          try {
            const GeoPoint p = GeoPoint::degrees(lat_deg, lon_deg);
            const TissotEllipse e = tissot(spec, p);
            const double r = e.semi_major * cfg.tissot_scale;
            box.add({e.center.x - r, e.center.y - r});
            box.add({e.center.x + r, e.center.y + r});
            ellipses.push_back({p, e});
          } catch (const DomainError&) {
            ++skipped;
          }
        }
      }
    }

    if (!(box.xmax >= box.xmin)) box = Box{-1, -1, 1, 1};
    const double usable = cfg.canvas * 0.9, margin = cfg.canvas * 0.05;
    const double w = box.xmax - box.xmin, h = box.ymax - box.ymin;
    const double s = usable / std::max({w, h, 1e-12});
    const double ox = margin + (usable - w * s) / 2 - box.xmin * s;
    const double oy = margin + (usable - h * s) / 2 + box.ymax * s;
    auto X = [&](double x) { return format_fixed(ox + s * x); };
    auto Y = [&](double y) { return format_fixed(oy - s * y); };
    auto L = [&](double len) { return format_fixed(s * len); };

    std::ostringstream body;
    body << "<g id=\"graticule\" class=\"" << cfg.graticule_class
         << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.5\">\n";
    for (const ParallelElem& p : parallels) {
      const std::string lat = format_fixed(rad_to_deg(p.lat));
      if (p.full_circle) {
        body << "<circle data-lat=\"" << lat << "\" cx=\"" << X(0) << "\" cy=\"" << Y(0)
             << "\" r=\"" << L(p.radius) << "\"/>\n";
      } else if (p.straight) {
        body << "<line data-lat=\"" << lat << "\" x1=\"" << X(p.a.x) << "\" y1=\"" << Y(p.a.y)
             << "\" x2=\"" << X(p.b.x) << "\" y2=\"" << Y(p.b.y) << "\"/>\n";
      } else {
        body << "<path data-lat=\"" << lat << "\" d=\"M " << X(p.a.x) << ' ' << Y(p.a.y)
             << " A " << L(p.radius) << ' ' << L(p.radius) << " 0 " << (p.large_arc ? 1 : 0)
             << " 1 " << X(p.b.x) << ' ' << Y(p.b.y) << "\"/>\n";
      }
    }
    for (const MeridianElem& m : meridians)
      body << "<line data-lon=\"" << format_fixed(rad_to_deg(m.lon)) << "\" x1=\"" << X(m.a.x)
           << "\" y1=\"" << Y(m.a.y) << "\" x2=\"" << X(m.b.x) << "\" y2=\"" << Y(m.b.y)
           << "\"/>\n";
    body << "</g>\n";

    body << "<g id=\"lines\" class=\"" << cfg.line_class
         << "\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1\">\n";
    for (const LineElem& r : runs) {
      body << "<path data-id=\"" << r.id << "\" d=\"M";
      for (std::size_t i = 0; i < r.pts.size(); ++i)
        body << (i ? " L " : " ") << X(r.pts[i].x) << ' ' << Y(r.pts[i].y);
      body << "\"/>\n";
    }
    body << "</g>\n";

    if (with_tissot) {
      body << "<g id=\"tissot\" class=\"" << cfg.tissot_class
           << "\" fill=\"#c0392b\" fill-opacity=\"0.35\" stroke=\"#c0392b\" stroke-width=\"0.5\">\n";
      for (const EllipseElem& el : ellipses) {
        const std::string cx = X(el.e.center.x), cy = Y(el.e.center.y);
        body << "<ellipse data-lat=\"" << format_fixed(rad_to_deg(el.at.lat()))
             << "\" data-lon=\"" << format_fixed(rad_to_deg(el.at.lon()))
             << "\" data-a=\"" << format_sig(el.e.semi_major, 12)
             << "\" data-b=\"" << format_sig(el.e.semi_minor, 12)
             << "\" data-orientation=\"" << format_sig(el.e.orientation, 12)
             << "\" cx=\"" << cx << "\" cy=\"" << cy
             << "\" rx=\"" << L(el.e.semi_major * cfg.tissot_scale)
             << "\" ry=\"" << L(el.e.semi_minor * cfg.tissot_scale)
             << "\" transform=\"rotate(" << format_fixed(-rad_to_deg(el.e.orientation)) << ' '
             << cx << ' ' << cy << ")\"/>\n";
      }
      body << "</g>\n";
    }

    std::ostringstream doc;
    const std::string size = format_fixed(cfg.canvas);
    doc << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
        << "<!-- projection: " << spec.label() << " -->\n"
        << "<!-- canvas transform: X = " << format_fixed(ox) << " + " << format_fixed(s)
        << " * x, Y = " << format_fixed(oy) << " - " << format_fixed(s)
        << " * y (uniform scale-to-fit, 5% margin, y axis flipped) -->\n"
        << "<!-- skipped elements: " << skipped << " -->\n"
        << body.str() << "</svg>\n";
    return doc.str();
  }

} // namespace conicmap

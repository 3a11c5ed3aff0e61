/**
 * \file csv.hpp
 * \brief Point, polyline and report CSV files
 *
 * Inputs are plain comma-separated text with a fixed header row.  Blank lines
 * and lines starting with '#' are ignored; errors report 1-based physical
 * line numbers.  Angles in files are decimal degrees.
 **********************************************************************/

#pragma once

#include <conicmap/distortion.hpp>
#include <conicmap/error.hpp>
#include <conicmap/format.hpp>
#include <conicmap/optimizer.hpp>
#include <conicmap/projection.hpp>
#include <conicmap/sphere.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace conicmap {

  struct Polyline {
    std::string id;
    std::vector<GeoPoint> points;
  };

  namespace detail {

    inline std::vector<std::string_view> split_fields(std::string_view line) {
      std::vector<std::string_view> out;
      std::size_t start = 0;
      for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return out;
    }

    inline std::string_view trim(std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
      return s;
    }

    // Calls row(fields, line_no) for every data row after checking the header.
    template <class Row>
    void for_each_row(std::istream& in, std::string_view header, Row&& row) {
      std::string line;
      std::size_t line_no = 0;
      bool seen_header = false;
      while (std::getline(in, line)) {
        ++line_no;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (!seen_header) {
          if (t != header)
            throw ParseError("expected header '" + std::string(header) + "'", line_no);
          seen_header = true;
          continue;
        }
        row(split_fields(t), line_no);
      }
      if (!seen_header)
        throw ParseError("missing header '" + std::string(header) + "'", line_no + 1);
    }

    inline double field_value(std::string_view f, std::string_view name, std::size_t line_no) {
      double v;
      if (!parse_double(f, v) || !std::isfinite(v))
        throw ParseError("malformed " + std::string(name) + " '" + std::string(trim(f)) + "'",
                         line_no);
      return v;
    }

    inline GeoPoint parse_lon_lat(std::string_view lon_f, std::string_view lat_f,
                                  std::size_t line_no) {
      const double lon = field_value(lon_f, "lon_deg", line_no);
      const double lat = field_value(lat_f, "lat_deg", line_no);
      if (std::abs(lat) > 90)
        throw ParseError("latitude " + std::string(trim(lat_f)) + " outside [-90, 90]", line_no);
      return GeoPoint::degrees(lat, lon);
    }

    inline std::ifstream open_in(const std::string& path) {
      std::ifstream in(path);
      if (!in) throw DomainError("cannot open '" + path + "'");
      return in;
    }

    inline std::ofstream open_out(const std::string& path) {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw DomainError("cannot write '" + path + "'");
      return out;
    }

    inline void finish(std::ofstream& out, const std::string& path) {
      out.flush();
      if (!out) throw DomainError("error writing '" + path + "'");
    }

    // RFC 4180 quoting for fields holding a comma or a quote, as the
    // two-parallel labels do.
    inline std::string quote_field(const std::string& f) {
      if (f.find_first_of(",\"\n") == std::string::npos) return f;
      std::string q = "\"";
      for (char ch : f) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + '"';
    }

  } // namespace detail

  /// Points from a `lon_deg,lat_deg` CSV; longitudes are normalized.
  inline std::vector<GeoPoint> read_points(std::istream& in) {
    std::vector<GeoPoint> pts;
    detail::for_each_row(in, "lon_deg,lat_deg", [&](const auto& f, std::size_t line_no) {
      if (f.size() != 2) throw ParseError("expected 2 fields", line_no);
      pts.push_back(detail::parse_lon_lat(f[0], f[1], line_no));
    });
    return pts;
  }

  inline std::vector<GeoPoint> read_points(const std::string& path) {
    auto in = detail::open_in(path);
    return read_points(in);
  }

  /// Plane points from an `x,y` CSV.
  inline std::vector<PlanePoint> read_plane_points(std::istream& in) {
    std::vector<PlanePoint> pts;
    detail::for_each_row(in, "x,y", [&](const auto& f, std::size_t line_no) {
      if (f.size() != 2) throw ParseError("expected 2 fields", line_no);
      pts.push_back({detail::field_value(f[0], "x", line_no),
                     detail::field_value(f[1], "y", line_no)});
    });
    return pts;
  }

  /// Polylines from an `id,lon_deg,lat_deg` CSV.  Consecutive rows with the
  /// same id form one polyline; an id may not reappear later in the file.
  inline std::vector<Polyline> read_polylines(std::istream& in) {
    std::vector<Polyline> lines;
    std::vector<std::size_t> first_line;
    auto close_last = [&]() {
      if (!lines.empty() && lines.back().points.size() < 2)
        throw ParseError("polyline '" + lines.back().id + "' has fewer than 2 points",
                         first_line.back());
    };
    detail::for_each_row(in, "id,lon_deg,lat_deg", [&](const auto& f, std::size_t line_no) {
      if (f.size() != 3) throw ParseError("expected 3 fields", line_no);
      const std::string id(detail::trim(f[0]));
      if (id.empty()) throw ParseError("empty polyline id", line_no);
      const GeoPoint p = detail::parse_lon_lat(f[1], f[2], line_no);
      if (lines.empty() || lines.back().id != id) {
        close_last();
        for (const Polyline& l : lines)
          if (l.id == id)
            throw ParseError("polyline '" + id + "' is not contiguous", line_no);
        lines.push_back({id, {}});
        first_line.push_back(line_no);
      } else if (lines.back().points.back() == p) {
        throw ParseError("polyline '" + id + "' repeats a point", line_no);
      }
      lines.back().points.push_back(p);
    });
    close_last();
    return lines;
  }

  inline std::vector<Polyline> read_polylines(const std::string& path) {
    auto in = detail::open_in(path);
    return read_polylines(in);
  }

  inline constexpr int coordinate_digits = 15;

  inline void write_points(std::ostream& out, const std::vector<GeoPoint>& pts) {
    out << "lon_deg,lat_deg\n";
    for (const GeoPoint& p : pts)
      out << format_sig(rad_to_deg(p.lon()), coordinate_digits) << ','
          << format_sig(rad_to_deg(p.lat()), coordinate_digits) << '\n';
  }

  inline void write_plane_points(std::ostream& out, const std::vector<PlanePoint>& pts) {
    out << "x,y\n";
    for (const PlanePoint& q : pts)
      out << format_sig(q.x, coordinate_digits) << ',' << format_sig(q.y, coordinate_digits)
          << '\n';
  }

  /// One row of a report CSV; an absent report leaves the numeric cells empty.
  struct ReportRow {
    std::string label;
    std::optional<DistortionReport> report;
  };

  inline constexpr const char* report_csv_header =
    "label,L,ell,v,K_max,witness_L_phi_deg,witness_ell_phi_deg";

  inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << report_csv_header << '\n';
    for (const ReportRow& r : rows) {
      out << detail::quote_field(r.label);
      if (r.report) {
        const DistortionReport& d = *r.report;
        for (double v : {d.L, d.ell, d.v, d.K_max, rad_to_deg(d.witness_L.lat()),
                         rad_to_deg(d.witness_ell.lat())})
          out << ',' << format_sig(v, 12);
      } else {
        out << ",,,,,,";
      }
      out << '\n';
    }
  }

  inline std::vector<ReportRow> report_rows(const std::vector<ComparisonRow>& table) {
    std::vector<ReportRow> rows;
    for (const ComparisonRow& c : table) rows.push_back({c.spec.label(), c.report});
    return rows;
  }

  inline void write_report_csv(const std::vector<ReportRow>& rows, const std::string& path) {
    auto out = detail::open_out(path);
    write_report_csv(out, rows);
    detail::finish(out, path);
  }

  inline void write_report_csv(const std::string& label, const DistortionReport& r,
                               const std::string& path) {
    write_report_csv({{label, r}}, path);
  }

  inline void write_report_csv(const std::vector<ComparisonRow>& table, const std::string& path) {
    write_report_csv(report_rows(table), path);
  }

  inline void write_profile_csv(std::ostream& out, const std::vector<ProfileSample>& prof) {
    out << "phi_deg,k,sigma,K\n";
    for (const ProfileSample& s : prof)
      out << format_sig(rad_to_deg(s.phi), 12) << ',' << format_sig(s.k, 12) << ','
          << format_sig(s.sigma, 12) << ',' << format_sig(s.K, 12) << '\n';
  }

  /// Search trace; p2 is left empty for one-parameter searches.
  inline void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace) {
    out << "p1_deg,p2_deg,v\n";
    for (const TraceEntry& t : trace) {
      out << format_sig(rad_to_deg(t.p1), 15) << ',';
      if (!std::isnan(t.p2)) out << format_sig(rad_to_deg(t.p2), 15);
      out << ',' << format_sig(t.v, 15) << '\n';
    }
  }

} // namespace conicmap

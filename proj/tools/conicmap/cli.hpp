/**
 * \file cli.hpp
 * \brief Command-line front end: argument parsing and subcommand dispatch
 *
 * Degrees are accepted on the command line and in files and converted to
 * radians here, once.  Exit codes: 0 success, 1 domain/runtime error,
 * 2 usage error.
 **********************************************************************/

#pragma once

#include <conicmap/conicmap.hpp>

#include <CLI11.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace conicmap::cli {

  class UsageError : public std::runtime_error {
  public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
  };

  struct HelpRequested {
    std::string text;
  };

  /// Parsed and validated command line.  Angles are radians.
  struct CommandSpec {
    std::string subcommand;
    std::string family;
    std::vector<std::string> families;      // compare
    std::optional<double> phi0, phi1, phi2, phis;
    std::optional<std::array<double, 2>> annulus;
    double grid_step = default_grid_step;
    double coarse_step = deg_to_rad(0.25);
    bool optimize = false;
    std::string in = "-", out = "-";
    std::optional<std::string> dump_profile, trace, map;
    double graticule_deg = 30;
    std::optional<double> tissot_deg;
    double tissot_scale = 0.04;
    std::optional<std::array<double, 3>> angles;
  };

  namespace detail {

    inline std::vector<std::string> split(const std::string& s, char sep) {
      std::vector<std::string> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, sep)) out.push_back(item);
      if (!s.empty() && s.back() == sep) out.emplace_back();
      return out;
    }

    inline double number(const std::string& s, const std::string& what) {
      double v;
      if (!parse_double(s, v) || !std::isfinite(v))
        throw UsageError("invalid number '" + s + "' for " + what);
      return v;
    }

    inline std::array<double, 2> parse_annulus(const std::string& s) {
      const auto parts = split(s, ':');
      if (parts.size() != 2) throw UsageError("--annulus expects S:N in degrees");
      const double a = number(parts[0], "--annulus"), b = number(parts[1], "--annulus");
      if (!(a < b)) throw UsageError("--annulus requires south < north");
      if (!(a >= -90 && b <= 90)) throw UsageError("--annulus bounds must lie in [-90, 90]");
      return {deg_to_rad(a), deg_to_rad(b)};
    }

    inline bool known_family(const std::string& f) {
      return f == "conic1" || f == "conic2" || f == "azimuthal" || f == "cylindrical";
    }

    // Per-family parameter flags: required ones must be present, others absent.
    inline void check_family_flags(const CommandSpec& c, const std::vector<std::string>& fams,
                                   bool params_allowed) {
      bool want0 = false, want12 = false, wants = false;
      for (const std::string& f : fams) {
        if (!known_family(f)) throw UsageError("unknown family '" + f + "'");
        want0 |= f == "conic1";
        want12 |= f == "conic2";
        wants |= f == "cylindrical";
      }
      if (!params_allowed) want0 = want12 = wants = false;
      auto check = [](bool wanted, bool present, const char* flag, bool allowed) {
        if (present && !wanted)
          throw UsageError(std::string(flag) + (allowed ? " contradicts the selected family"
                                                        : " is not accepted here"));
        if (wanted && !present) throw UsageError(std::string("missing required ") + flag);
      };
      check(want0, c.phi0.has_value(), "--phi0", params_allowed);
      check(want12, c.phi1.has_value(), "--phi1", params_allowed);
      check(want12, c.phi2.has_value(), "--phi2", params_allowed);
      check(wants, c.phis.has_value(), "--phis", params_allowed);
    }

  } // namespace detail

  /// Parse argv (without the program name).  Throws UsageError or
  /// HelpRequested.
  inline CommandSpec parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Equidistant conic projections and their distortion", "conicmap"};
    app.require_subcommand(1, 1);

    std::string family, families, annulus, angles;
    std::optional<double> phi0, phi1, phi2, phis, grid_step, coarse_step, tissot, graticule,
      tissot_scale;
    std::string in = "-", out = "-", dump_profile, trace, map;
    bool optimize = false;

    auto projection_flags = [&](CLI::App* s, bool family_required) {
      auto* f = s->add_option("--family", family, "conic1|conic2|azimuthal|cylindrical");
      if (family_required) f->required();
      s->add_option("--phi0", phi0, "tangent parallel (deg), conic1");
      s->add_option("--phi1", phi1, "southern standard parallel (deg), conic2");
      s->add_option("--phi2", phi2, "northern standard parallel (deg), conic2");
      s->add_option("--phis", phis, "standard parallel (deg), cylindrical");
    };

    auto* project = app.add_subcommand("project", "lon_deg,lat_deg CSV to x,y CSV");
    auto* invert = app.add_subcommand("invert", "x,y CSV to lon_deg,lat_deg CSV");
    auto* tissot_cmd = app.add_subcommand("tissot", "Tissot ellipses at the points of a lon_deg,lat_deg CSV");
    for (auto* s : {project, invert, tissot_cmd}) {
      projection_flags(s, true);
      s->add_option("--in", in, "input CSV ('-' for stdin)");
      s->add_option("--out", out, "output CSV ('-' for stdout)");
    }

    auto* analyze = app.add_subcommand("analyze", "distortion of one projection over an annulus");
    projection_flags(analyze, true);
    analyze->add_option("--annulus", annulus, "S:N in degrees")->required();
    analyze->add_option("--grid-step", grid_step, "latitude grid step (deg)");
    analyze->add_option("--dump-profile", dump_profile, "write phi_deg,k,sigma,K CSV");
    analyze->add_option("--out", out, "report CSV ('-' for none)");

    auto* optimize_cmd = app.add_subcommand("optimize", "best standard parallels for an annulus");
    projection_flags(optimize_cmd, true);
    optimize_cmd->add_option("--annulus", annulus, "S:N in degrees")->required();
    optimize_cmd->add_option("--coarse-step", coarse_step, "exhaustive grid step (deg)");
    optimize_cmd->add_option("--trace", trace, "write p1_deg,p2_deg,v search trace CSV");

    auto* compare = app.add_subcommand("compare", "rank projections by metrical distortion");
    projection_flags(compare, false);
    compare->add_option("--families", families, "comma-separated family list")->required();
    compare->add_option("--annulus", annulus, "S:N in degrees")->required();
    compare->add_flag("--optimize", optimize, "optimize each family on the annulus first");
    compare->add_option("--grid-step", grid_step, "latitude grid step (deg)");
    compare->add_option("--coarse-step", coarse_step, "exhaustive grid step (deg)");
    compare->add_option("--out", out, "report CSV ('-' for none)");

    auto* render = app.add_subcommand("render", "SVG map with graticule and Tissot ellipses");
    projection_flags(render, true);
    render->add_option("--map", map, "polyline CSV (id,lon_deg,lat_deg)");
    render->add_option("--graticule", graticule, "graticule spacing (deg)");
    render->add_option("--tissot", tissot, "Tissot grid spacing (deg); enables ellipses");
    render->add_option("--tissot-scale", tissot_scale, "ellipse radius in sphere radii");
    render->add_option("--annulus", annulus, "rendered latitude band S:N (deg)");
    render->add_option("--out", out, "SVG path ('-' for stdout)");

    auto* triangle = app.add_subcommand("triangle", "sides of a spherical triangle from its angles");
    triangle->add_option("--angles", angles, "A,B,C in degrees")->required();

    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
      throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }

    CommandSpec c;
    c.subcommand = app.get_subcommands().front()->get_name();
    c.family = family;
    if (phi0) c.phi0 = deg_to_rad(*phi0);
    if (phi1) c.phi1 = deg_to_rad(*phi1);
    if (phi2) c.phi2 = deg_to_rad(*phi2);
    if (phis) c.phis = deg_to_rad(*phis);
    if (!annulus.empty()) c.annulus = detail::parse_annulus(annulus);
    if (grid_step) {
      if (!(*grid_step > 0)) throw UsageError("--grid-step must be positive");
      c.grid_step = deg_to_rad(*grid_step);
    }
    if (coarse_step) {
      if (!(*coarse_step > 0)) throw UsageError("--coarse-step must be positive");
      c.coarse_step = deg_to_rad(*coarse_step);
    }
    c.optimize = optimize;
    c.in = in;
    c.out = out;
    if (!dump_profile.empty()) c.dump_profile = dump_profile;
    if (!trace.empty()) c.trace = trace;
    if (!map.empty()) c.map = map;
    if (graticule) c.graticule_deg = *graticule;
    c.tissot_deg = tissot;
    if (tissot_scale) c.tissot_scale = *tissot_scale;

    if (c.subcommand == "triangle") {
      const auto parts = detail::split(angles, ',');
      if (parts.size() != 3) throw UsageError("--angles expects A,B,C in degrees");
      c.angles = std::array<double, 3>{deg_to_rad(detail::number(parts[0], "--angles")),
                                       deg_to_rad(detail::number(parts[1], "--angles")),
                                       deg_to_rad(detail::number(parts[2], "--angles"))};
    } else if (c.subcommand == "compare") {
      c.families = detail::split(families, ',');
      if (c.families.empty()) throw UsageError("--families is empty");
      detail::check_family_flags(c, c.families, !c.optimize);
    } else if (c.subcommand == "optimize") {
      if (c.family != "conic1" && c.family != "conic2" && c.family != "cylindrical")
        throw UsageError("optimize supports --family conic1, conic2 or cylindrical");
      detail::check_family_flags(c, {c.family}, false);
    } else {
      detail::check_family_flags(c, {c.family}, true);
    }
    return c;
  }

  /// Spec for one family from the command's parameter flags.
  inline ConicSpec spec_for(const CommandSpec& c, const std::string& family) {
    if (family == "conic1") return build_conic_one_parallel(*c.phi0);
    if (family == "conic2") return build_conic_two_parallels(*c.phi1, *c.phi2);
    if (family == "cylindrical") return build_cylindrical(*c.phis);
    return build_azimuthal();
  }

  namespace detail {

    inline SphericalAnnulus region(const CommandSpec& c) {
      return {(*c.annulus)[0], (*c.annulus)[1]};
    }

    inline OptimizationResult optimize_family(const std::string& family, const SphericalAnnulus& r,
                                              const OptimizerOptions& opt) {
      if (family == "conic1") return optimize_one_parallel(r, opt);
      if (family == "conic2") return optimize_two_parallels(r, opt);
      if (family == "cylindrical") return optimize_cylindrical(r, opt);
      throw DomainError("family '" + family + "' has no free parameters to optimize");
    }

    // Text written to a path, or to the command's standard output for "-".
    struct Output {
      std::string path;
      std::string text;
    };

    inline std::string deg(double rad) { return format_sig(rad_to_deg(rad), 12); }

    inline std::string read_all(const std::string& path, std::istream& stdin_) {
      std::ostringstream ss;
      if (path == "-") {
        ss << stdin_.rdbuf();
      } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw DomainError("cannot open '" + path + "'");
        ss << f.rdbuf();
      }
      return ss.str();
    }

  } // namespace detail

  /// Execute a validated command.  Nothing is written unless the whole
  /// command succeeds.
  inline int run(const CommandSpec& c, std::istream& in, std::ostream& out, std::ostream& err) {
    std::vector<detail::Output> outputs;
    try {
      const std::string& sub = c.subcommand;
      if (sub == "project" || sub == "invert" || sub == "tissot") {
        const ConicSpec spec = spec_for(c, c.family);
        std::istringstream src(detail::read_all(c.in, in));
        std::ostringstream dst;
        if (sub == "invert") {
          std::vector<GeoPoint> geo;
          std::size_t row = 0;
          for (const PlanePoint& q : read_plane_points(src)) {
            ++row;
            try {
              geo.push_back(inverse(spec, q));
            } catch (const DomainError& e) {
              throw DomainError("data row " + std::to_string(row) + ": " + e.what());
            }
          }
          write_points(dst, geo);
        } else {
          const std::vector<GeoPoint> pts = read_points(src);
          if (sub == "project") {
            std::vector<PlanePoint> plane;
            for (std::size_t i = 0; i < pts.size(); ++i) {
              try {
                plane.push_back(forward(spec, pts[i]));
              } catch (const DomainError& e) {
                throw DomainError("data row " + std::to_string(i + 1) + ": " + e.what());
              }
            }
            write_plane_points(dst, plane);
          } else {
            dst << "lon_deg,lat_deg,x,y,semi_major,semi_minor,orientation_deg,K\n";
            for (std::size_t i = 0; i < pts.size(); ++i) {
              try {
                const TissotEllipse e = tissot(spec, pts[i]);
                dst << detail::deg(pts[i].lon()) << ',' << detail::deg(pts[i].lat()) << ','
                    << format_sig(e.center.x, 15) << ',' << format_sig(e.center.y, 15) << ','
                    << format_sig(e.semi_major, 15) << ',' << format_sig(e.semi_minor, 15)
                    << ',' << detail::deg(e.orientation) << ','
                    << format_sig(e.semi_major / e.semi_minor, 15) << '\n';
              } catch (const DomainError& e) {
                throw DomainError("data row " + std::to_string(i + 1) + ": " + e.what());
              }
            }
          }
        }
        outputs.push_back({c.out, dst.str()});
      } else if (sub == "analyze") {
        const ConicSpec spec = spec_for(c, c.family);
        const SphericalAnnulus r = detail::region(c);
        const DistortionReport d = analyze_annulus(spec, r, c.grid_step);
        std::ostringstream o;
        o << "projection: " << spec.label() << '\n'
          << "annulus_deg: " << detail::deg(r.south()) << ':' << detail::deg(r.north()) << '\n'
          << "L: " << format_sig(d.L, 15) << '\n'
          << "ell: " << format_sig(d.ell, 15) << '\n'
          << "v: " << format_sig(d.v, 15) << '\n'
          << "K_max: " << format_sig(d.K_max, 15) << '\n'
          << "witness_L_lat_deg: " << detail::deg(d.witness_L.lat()) << '\n'
          << "witness_L_lon_deg: " << detail::deg(d.witness_L.lon()) << '\n'
          << "witness_ell_lat_deg: " << detail::deg(d.witness_ell.lat()) << '\n'
          << "witness_ell_lon_deg: " << detail::deg(d.witness_ell.lon()) << '\n'
          << "grid_step_deg: " << detail::deg(d.grid.step) << '\n'
          << "samples: " << d.grid.samples << '\n';
        outputs.push_back({"-", o.str()});
        if (c.out != "-") {
          std::ostringstream csv;
          write_report_csv(csv, {{spec.label(), d}});
          outputs.push_back({c.out, csv.str()});
        }
        if (c.dump_profile) {
          std::ostringstream csv;
          write_profile_csv(csv, sigma_profile(spec, r, c.grid_step));
          outputs.push_back({*c.dump_profile, csv.str()});
        }
      } else if (sub == "optimize") {
        const SphericalAnnulus r = detail::region(c);
        OptimizerOptions opt;
        opt.coarse_step = c.coarse_step;
        opt.record_trace = c.trace.has_value();
        const OptimizationResult res = detail::optimize_family(c.family, r, opt);
        const ConicSpec& s = res.best_spec;
        std::ostringstream o;
        o << "family: " << c.family << '\n'
          << "annulus_deg: " << detail::deg(r.south()) << ':' << detail::deg(r.north()) << '\n';
        const auto& in_par = s.provenance().inputs;
        if (c.family == "conic2") {
          o << "phi1_deg: " << format_sig(rad_to_deg(in_par[0]), 15) << '\n'
            << "phi2_deg: " << format_sig(rad_to_deg(in_par[1]), 15) << '\n';
        } else {
          o << (c.family == "conic1" ? "phi0_deg: " : "phis_deg: ")
            << format_sig(rad_to_deg(in_par[0]), 15) << '\n';
        }
        if (s.is_conic())
          o << "n: " << format_sig(s.n(), 15) << '\n'
            << "C: " << format_sig(s.apex(), 15) << '\n'
            << "apex_colatitude_deg: " << format_sig(rad_to_deg(apex_colatitude(s)), 15) << '\n';
        o << "v: " << format_sig(res.v_star, 15) << '\n'
          << "certificate: " << format_sig(res.certificate, 6) << '\n'
          << "evaluations: " << res.evaluations << '\n';
        outputs.push_back({"-", o.str()});
        if (c.trace) {
          std::ostringstream csv;
          write_trace_csv(csv, res.search_trace);
          outputs.push_back({*c.trace, csv.str()});
        }
      } else if (sub == "compare") {
        const SphericalAnnulus r = detail::region(c);
        std::vector<ConicSpec> specs;
        std::vector<std::string> failures;
        OptimizerOptions opt;
        opt.coarse_step = c.coarse_step;
        for (const std::string& f : c.families) {
          try {
            if (c.optimize && f != "azimuthal")
              specs.push_back(detail::optimize_family(f, r, opt).best_spec);
            else
              specs.push_back(spec_for(c, f));
          } catch (const DomainError& e) {
            failures.push_back(f + ": " + e.what());
          }
        }
        const auto table = compare_specs(specs, r, c.grid_step);
        std::ostringstream o;
        write_report_csv(o, report_rows(table));
        for (const ComparisonRow& row : table)
          if (!row.report) o << "# " << row.spec.label() << ": " << row.error << '\n';
        for (const std::string& f : failures) o << "# " << f << '\n';
        outputs.push_back({"-", o.str()});
        if (c.out != "-") {
          std::ostringstream csv;
          write_report_csv(csv, report_rows(table));
          outputs.push_back({c.out, csv.str()});
        }
      } else if (sub == "render") {
        const ConicSpec spec = spec_for(c, c.family);
        RenderConfig cfg;
        cfg.graticule_deg = c.graticule_deg;
        if (c.tissot_deg) cfg.tissot_deg = *c.tissot_deg;
        cfg.tissot_scale = c.tissot_scale;
        if (c.annulus) {
          cfg.lat_south_deg = rad_to_deg((*c.annulus)[0]);
          cfg.lat_north_deg = rad_to_deg((*c.annulus)[1]);
        }
        std::vector<Polyline> lines;
        if (c.map) lines = read_polylines(*c.map);
        outputs.push_back({c.out, render_svg(spec, lines, cfg, c.tissot_deg.has_value())});
      } else if (sub == "triangle") {
        const auto& a = *c.angles;
        const TriangleSides s = solve_sides_from_angles({a[0], a[1], a[2]});
        std::ostringstream o;
        o << "a_deg: " << format_sig(rad_to_deg(s.a), 15) << '\n'
          << "b_deg: " << format_sig(rad_to_deg(s.b), 15) << '\n'
          << "c_deg: " << format_sig(rad_to_deg(s.c), 15) << '\n';
        outputs.push_back({"-", o.str()});
      }
    } catch (const DomainError& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const ParseError& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }

    for (const detail::Output& o : outputs) {
      if (o.path == "-") {
        out << o.text;
        continue;
      }
      std::ofstream f(o.path, std::ios::binary);
      f << o.text;
      if (!f) {
        err << "error: cannot write '" << o.path << "'\n";
        return 1;
      }
    }
    return 0;
  }

  /// Whole-program entry point, testable with string streams.
  inline int main_entry(const std::vector<std::string>& argv, std::istream& in,
                        std::ostream& out, std::ostream& err) {
    CommandSpec c;
    try {
      c = parse_args(argv);
    } catch (const HelpRequested& h) {
      out << h.text;
      return 0;
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    }
    return run(c, in, out, err);
  }

} // namespace conicmap::cli

#include "daylit/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "daylit/engine.hpp"
#include "daylit/error.hpp"
#include "daylit/scene.hpp"
#include "daylit/weather.hpp"

namespace daylit::cli {

namespace {

Scene load_scene(const RunConfig& cfg) {
  Scene scene = parse_scene(read_file(cfg.scene_path));
  const Overrides& o = cfg.overrides;
  if (o.patch_n) {
    if (*o.patch_n < 1) throw ValidationError("--patch-n must be at least 1");
    scene.options.patch_n = *o.patch_n;
  }
  if (o.k_diffuse) scene.efficacy.k_diffuse = *o.k_diffuse;
  if (o.k_beam) scene.efficacy.k_beam = *o.k_beam;
  scene.efficacy.validate();
  if (o.enable_overhang) scene.options.enable_overhang_shading = true;
  if (o.grid_height || o.grid_spacing) {
    GridSpec grid;
    if (const auto* g = std::get_if<GridSpec>(&scene.sensors)) grid = *g;
    if (o.grid_height) grid.height_m = *o.grid_height;
    if (o.grid_spacing) grid.spacing_m = *o.grid_spacing;
    if (grid.height_m < 0.0) throw ValidationError("--grid-height must be >= 0");
    scene.sensors = grid;
  }
  return scene;
}

// Runs body and maps failures onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return io_failure;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return semantic_failure;
  } catch (const GeometryError& e) {
    err << "invalid geometry: " << e.what() << '\n';
    return semantic_failure;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return semantic_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return io_failure;
  }
}

// Writes through a stream to a file, or to out when path is empty.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  write(file);
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", path));
}

std::string gnuplot_script(const std::string& csv, const std::vector<SensorPoint>& points) {
  std::string s = fmt::format(
      "# illuminance per sensor from {}\n"
      "set datafile separator ','\n"
      "set xdata time\n"
      "set timefmt '%Y-%m-%dT%H:%M:%S'\n"
      "set format x '%H:%M'\n"
      "set ylabel 'illuminance (lux)'\n"
      "set key outside\n"
      "plot ",
      csv);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) s += ", \\\n     ";
    s += fmt::format("'{}' using 1:(strcol(2) eq '{}' ? $9 : 1/0) with lines title '{}'", csv, points[i].id,
                     points[i].id);
  }
  s += "\n";
  return s;
}

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(cfg);
    const Zone& z = scene.zone;
    out << fmt::format("scene: {}\n", cfg.scene_path);
    out << fmt::format("site: lat {:.4f} lon {:.4f} tz {:+.1f} h albedo {:.3f}\n", scene.site.latitude_deg,
                       scene.site.longitude_deg, scene.site.tz_offset_h, scene.site.albedo);
    out << fmt::format("surfaces: {} total area {:.4f} m2 mean reflectance {:.4f}\n", z.surfaces().size(),
                       z.total_area(), z.mean_reflectance());
    out << fmt::format("glazings: {}\n", z.glazings().size());
    for (const auto& g : z.glazings()) {
      out << fmt::format("  {} on {}: area {:.4f} m2 transmittance {:.3f}\n", g.id, g.host_surface, g.polygon.area(),
                         g.transmittance);
    }
    out << fmt::format("obstructions: {}\n", scene.obstructions.size());
    const auto points = scene.sensor_points();
    out << fmt::format("sensors: {}\n", points.size());
    for (const auto& p : points) {
      out << fmt::format("  {} ({:.4f}, {:.4f}, {:.4f})\n", p.id, p.position.x, p.position.y, p.position.z);
    }
    for (const auto& w : z.warnings()) out << "warning: " << w << '\n';
    return ok;
  });
}

int cmd_grid(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(cfg.edh >= 0.0)) throw InputError("--edh must be >= 0");
    const Scene scene = load_scene(cfg);
    const auto points = scene.sensor_points();
    std::vector<DaylightComponents> df;
    df.reserve(points.size());
    for (const auto& p : points) df.push_back(daylight_factor_at(scene, p.position));
    emit(cfg.output_path, out, [&](std::ostream& os) {
      os << "point_id,x,y,z,sc_pct,erc_pct,irc_pct,df_pct,e_diffuse_lux\n";
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i].position;
        os << fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}\n", points[i].id, p.x, p.y, p.z,
                          df[i].sc, df[i].erc, df[i].irc, df[i].df, df[i].df / 100.0 * cfg.edh);
      }
    });
    return ok;
  });
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.output_path.empty()) throw InputError("simulate needs --out");
    const Scene scene = load_scene(cfg);
    const auto weather = parse_weather(read_file(cfg.weather_path));
    const auto start = std::chrono::steady_clock::now();
    const auto rows = simulate(scene, weather);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(cfg.output_path, out, [&](std::ostream& os) { write_results_csv(os, rows); });
    if (cfg.emit_gnuplot) {
      const std::string gp = cfg.output_path + ".gp";
      emit(gp, out, [&](std::ostream& os) { os << gnuplot_script(cfg.output_path, scene.sensor_points()); });
    }
    out << fmt::format("wrote {} rows to {} in {:.3f} s\n", rows.size(), cfg.output_path, seconds);
    return ok;
  });
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(cfg);
    const auto weather = parse_weather(read_file(cfg.weather_path));
    const auto measured = parse_measurements(read_file(cfg.measured_path));
    const auto rows = simulate(scene, weather);
    const ValidationReport report = validate(rows, measured);
    emit(cfg.output_path, out, [&](std::ostream& os) { write_metrics_report(os, report); });
    out << fmt::format("matched {} measurements, {} unmatched\n", report.matched, report.unmatched);
    return ok;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indoor daylight simulation: daylight factors, sunspots and illuminance time series"};
  app.require_subcommand(1);
  RunConfig cfg;
  Overrides& o = cfg.overrides;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--patch-n", o.patch_n, "Glazing patch grid size per side");
    sub->add_option("--k-diffuse", o.k_diffuse, "Diffuse luminous efficacy (lm/W)");
    sub->add_option("--k-beam", o.k_beam, "Beam luminous efficacy (lm/W)");
    sub->add_flag("--enable-overhang", o.enable_overhang, "Shade sunspots with obstruction shadows");
    sub->add_option("--grid-height", o.grid_height, "Sensor grid height above the floor (m)");
    sub->add_option("--grid-spacing", o.grid_spacing, "Sensor grid spacing (m)");
  };

  auto* check = app.add_subcommand("check", "Validate a scene and print a summary");
  check->add_option("scene", cfg.scene_path)->required();
  add_overrides(check);

  auto* grid = app.add_subcommand("grid", "Daylight factor snapshot at each sensor");
  grid->add_option("scene", cfg.scene_path)->required();
  grid->add_option("--edh", cfg.edh, "Exterior diffuse horizontal illuminance (lux)")->required();
  grid->add_option("--out", cfg.output_path, "Output CSV (default stdout)");
  add_overrides(grid);

  auto* sim = app.add_subcommand("simulate", "Illuminance time series");
  sim->add_option("scene", cfg.scene_path)->required();
  sim->add_option("weather", cfg.weather_path)->required();
  sim->add_option("--out", cfg.output_path, "Results CSV")->required();
  sim->add_flag("--emit-gnuplot", cfg.emit_gnuplot, "Also write <out>.gp");
  add_overrides(sim);

  auto* val = app.add_subcommand("validate", "Compare simulated and measured illuminance");
  val->add_option("scene", cfg.scene_path)->required();
  val->add_option("weather", cfg.weather_path)->required();
  val->add_option("measured", cfg.measured_path)->required();
  val->add_option("--out", cfg.output_path, "Metrics report (default stdout)");
  add_overrides(val);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, out, msg);
    err << msg.str();
    return e.get_exit_code() == 0 ? ok : io_failure;
  }

  if (check->parsed()) return cmd_check(cfg, out, err);
  if (grid->parsed()) return cmd_grid(cfg, out, err);
  if (sim->parsed()) return cmd_simulate(cfg, out, err);
  return cmd_validate(cfg, out, err);
}

}  // namespace daylit::cli

#include "qlzsm/presets.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "qlzsm/majorana.hpp"
#include "qlzsm/spectra.hpp"
#include "qlzsm/version.hpp"

namespace qlzsm {

namespace {

using json = nlohmann::ordered_json;

json system_json(const SystemSpec& s) {
  json j;
  j["omega_ge_rad_per_us"] = s.omega_ge;
  j["omega_ge_mhz"] = units::angular_to_mhz(s.omega_ge);
  j["omega_ef_rad_per_us"] = s.omega_ef;
  j["omega_ef_mhz"] = units::angular_to_mhz(s.omega_ef);
  j["anharmonicity_mhz"] = units::angular_to_mhz(s.anharmonicity());
  j["dipole_ratio_ef"] = s.dipole_ratio_ef();
  j["dipole_ratio_fh"] = s.dipole_ratio_fh();
  j["n_levels"] = s.n_levels;
  j["gamma_eg_per_us"] = s.gamma_eg;
  j["temperature_k"] = s.temperature;
  return j;
}

json drive_json(const DriveSpec& d) {
  json j;
  j["duration_us"] = d.duration;
  j["mod_depth_rad_per_us"] = d.mod_depth;
  j["mod_depth_mhz"] = units::angular_to_mhz(d.mod_depth);
  j["offset_rad_per_us"] = d.offset;
  j["offset_mhz"] = units::angular_to_mhz(d.offset);
  j["omega_max_rad_per_us"] = d.omega_max;
  j["omega_max_mhz"] = units::angular_to_mhz(d.omega_max);
  j["chirp_rate_rad_per_us2"] = d.chirp_rate();
  j["envelope_order"] = d.envelope_order;
  j["envelope_cutoff"] = d.envelope_cutoff;
  return j;
}

json base_manifest(const std::string& preset, const RunConfig& cfg) {
  json m;
  m["schema_version"] = kSchemaVersion;
  m["software_version"] = kVersion;
  m["preset"] = preset;
  m["system"] = system_json(cfg.system);
  m["drive"] = drive_json(cfg.drive);
  json run;
  run["engine"] = engine_name(cfg.engine);
  run["convention"] = convention_name(cfg.convention);
  run["tol"] = cfg.tol;
  run["samples"] = cfg.n_samples;
  run["threads"] = cfg.threads;
  run["format"] = format_name(cfg.format);
  m["run"] = std::move(run);
  return m;
}

void write_manifest(const RunConfig& cfg, json manifest,
                    const std::vector<std::string>& files,
                    std::vector<std::string>& out_files) {
  manifest["outputs"] = files;
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << manifest.dump(2) << "\n";
  out_files = files;
  out_files.push_back("manifest.json");
}

std::vector<std::string> preset_fig1(const RunConfig& cfg) {
  // The instantaneous-spectrum picture is defined on the three-level ladder.
  RunConfig c = cfg;
  c.system.n_levels = 3;

  std::vector<std::string> files;
  json manifest = base_manifest("fig1-eigen", c);
  manifest["note"] =
      "flipped file repeats the analysis with the opposite modulation sign "
      "at the same amplitude";

  for (const bool flipped : {false, true}) {
    DriveSpec drive = c.drive;
    if (flipped) drive.mod_depth = -drive.mod_depth;
    const auto spectrum = instantaneous_spectrum(c.system, drive, c.n_samples);

    Table t;
    t.meta("mod_depth_mhz",
           format_double(units::angular_to_mhz(drive.mod_depth)));
    t.columns = {"t_us"};
    for (const auto& br : spectrum) {
      const std::string b = std::to_string(br.label + 1);
      t.columns.push_back("energy_" + b + "_rad_per_us");
      t.columns.push_back("comp_g_" + b);
      t.columns.push_back("comp_e_" + b);
      t.columns.push_back("comp_f_" + b);
      t.columns.push_back("rgb_r_" + b);
      t.columns.push_back("rgb_g_" + b);
      t.columns.push_back("rgb_b_" + b);
    }
    const int n = static_cast<int>(spectrum.front().times.size());
    for (int k = 0; k < n; ++k) {
      std::vector<double> row{spectrum.front().times[k]};
      for (const auto& br : spectrum) {
        const Eigen::Vector3d rgb = composition_rgb(br.compositions.row(k));
        row.push_back(br.energies[k]);
        row.push_back(br.compositions(k, 0));
        row.push_back(br.compositions(k, 1));
        row.push_back(br.compositions(k, 2));
        row.push_back(rgb(0));
        row.push_back(rgb(1));
        row.push_back(rgb(2));
      }
      t.add_row(std::move(row));
    }
    files.push_back(write_table(c.out_dir,
                                flipped ? "fig1_eigen_flipped" : "fig1_eigen",
                                c.format, t));
  }

  std::vector<std::string> out;
  write_manifest(c, std::move(manifest), files, out);
  return out;
}

std::vector<std::string> preset_fig2_trajectory(const RunConfig& cfg) {
  EvolveOptions opts{cfg.n_samples, cfg.tol, false};
  const auto schrod = evolve_schrodinger(
      cfg.system, cfg.drive, PureState::basis_state(cfg.system.n_levels, 0),
      opts);
  const auto lind = evolve_lindblad(cfg.system, cfg.drive,
                                    DensityMatrix::ground(cfg.system.n_levels),
                                    opts);
  const auto eff = evolve_effective(cfg.system, cfg.drive, opts);

  Table t;
  t.columns = {"t_us", "omega_d_rad_per_us", "omega_rad_per_us"};
  auto pop_columns = [&t](const Trajectory& traj, const std::string& suffix) {
    for (const auto& name : traj.level_names) {
      t.columns.push_back("p_" + name + "_" + suffix);
    }
  };
  pop_columns(schrod, "schrodinger");
  pop_columns(lind, "lindblad");
  t.columns.push_back("p_g_effective");
  t.columns.push_back("p_e_effective");
  t.columns.push_back("p_f_effective");

  for (int k = 0; k < schrod.n_samples(); ++k) {
    std::vector<double> row{schrod.times[k], schrod.drive[k].omega_d,
                            schrod.drive[k].omega};
    for (int l = 0; l < schrod.n_levels(); ++l) {
      row.push_back(schrod.populations(k, l));
    }
    for (int l = 0; l < lind.n_levels(); ++l) {
      row.push_back(lind.populations(k, l));
    }
    row.push_back(eff.populations(k, 0));
    row.push_back(0.0);  // the two-level reduction carries no e population
    row.push_back(eff.populations(k, 1));
    t.add_row(std::move(row));
  }

  json manifest = base_manifest("fig2-trajectory", cfg);
  json results;
  results["final_p_f_schrodinger"] =
      schrod.populations(schrod.n_samples() - 1, 2);
  results["max_p_e_schrodinger"] = schrod.populations.col(1).maxCoeff();
  results["final_p_f_lindblad"] = lind.populations(lind.n_samples() - 1, 2);
  results["final_p_f_effective"] = eff.populations(eff.n_samples() - 1, 1);
  json warnings = json::array();
  for (const auto& w : schrod.warnings) warnings.push_back("schrodinger: " + w);
  for (const auto& w : lind.warnings) warnings.push_back("lindblad: " + w);
  manifest["results"] = std::move(results);
  manifest["warnings"] = std::move(warnings);

  std::vector<std::string> out;
  write_manifest(cfg, std::move(manifest),
                 {write_table(cfg.out_dir, "fig2_trajectory", cfg.format, t)},
                 out);
  return out;
}

std::vector<std::string> preset_fig2_majorana(const RunConfig& cfg) {
  // Stellar representation of the qutrit dynamics.
  RunConfig c = cfg;
  c.system.n_levels = 3;
  EvolveOptions opts{c.n_samples, c.tol, true};
  const auto traj = evolve_schrodinger(c.system, c.drive,
                                       PureState::basis_state(3, 0), opts);
  const auto stars = stars_trajectory(traj);

  Table t;
  t.columns = {"t_us", "theta1_rad", "phi1_rad", "theta2_rad", "phi2_rad"};
  for (int k = 0; k < traj.n_samples(); ++k) {
    t.add_row({traj.times[k], stars[k].star1.theta, stars[k].star1.phi,
               stars[k].star2.theta, stars[k].star2.phi});
  }

  json manifest = base_manifest("fig2-majorana", c);
  std::vector<std::string> out;
  write_manifest(c, std::move(manifest),
                 {write_table(c.out_dir, "fig2_majorana", c.format, t)}, out);
  return out;
}

std::vector<std::string> preset_fig3_map(const RunConfig& cfg) {
  SweepGrid grid;
  grid.amplitudes = cfg.sweep.amplitude_axis();
  grid.offsets = cfg.sweep.offset_axis();
  grid.base_drive = cfg.drive;
  grid.base_system = cfg.system;
  grid.engine = cfg.engine;

  const SweepResult result = run_sweep(grid, cfg.tol, cfg.threads);

  Table map;
  map.meta("engine", engine_name(cfg.engine));
  map.columns = {"amplitude_rad_per_us", "offset_rad_per_us"};
  const int n_levels = result.levels();
  const std::vector<std::string> names =
      cfg.engine == Engine::kEffective
          ? std::vector<std::string>{"g", "f"}
          : std::vector<std::string>{"g", "e", "f", "h"};
  for (int l = 0; l < n_levels; ++l) map.columns.push_back("p_" + names[l]);
  for (std::size_t i = 0; i < grid.offsets.size(); ++i) {
    for (std::size_t j = 0; j < grid.amplitudes.size(); ++j) {
      std::vector<double> row{grid.amplitudes[j], grid.offsets[i]};
      for (int l = 0; l < n_levels; ++l) {
        row.push_back(result.p_final[l](static_cast<int>(i),
                                        static_cast<int>(j)));
      }
      map.add_row(std::move(row));
    }
  }

  const auto contours = extract_contours(result, cfg.sweep.contour_levels);
  Table ct;
  ct.columns = {"level", "polyline", "vertex", "amplitude_rad_per_us",
                "offset_rad_per_us"};
  for (const auto& set : contours) {
    for (std::size_t p = 0; p < set.polylines.size(); ++p) {
      for (std::size_t v = 0; v < set.polylines[p].size(); ++v) {
        ct.add_row({set.level, static_cast<double>(p), static_cast<double>(v),
                    set.polylines[p][v].x, set.polylines[p][v].y});
      }
    }
  }

  json manifest = base_manifest("fig3-map", cfg);
  json sweep;
  sweep["amp_min_mhz"] = units::angular_to_mhz(cfg.sweep.amp_min);
  sweep["amp_max_mhz"] = units::angular_to_mhz(cfg.sweep.amp_max);
  sweep["amp_step_mhz"] = units::angular_to_mhz(cfg.sweep.amp_step);
  sweep["offset_min_mhz"] = units::angular_to_mhz(cfg.sweep.offset_min);
  sweep["offset_max_mhz"] = units::angular_to_mhz(cfg.sweep.offset_max);
  sweep["offset_step_mhz"] = units::angular_to_mhz(cfg.sweep.offset_step);
  sweep["n_amplitudes"] = grid.amplitudes.size();
  sweep["n_offsets"] = grid.offsets.size();
  sweep["contour_levels"] = cfg.sweep.contour_levels;
  json failures = json::array();
  for (const auto& f : result.failures) {
    json jf;
    jf["offset_index"] = f.offset_index;
    jf["amplitude_index"] = f.amplitude_index;
    jf["message"] = f.message;
    failures.push_back(std::move(jf));
  }
  sweep["cell_failures"] = std::move(failures);
  manifest["sweep"] = std::move(sweep);

  std::vector<std::string> out;
  write_manifest(cfg, std::move(manifest),
                 {write_table(cfg.out_dir, "fig3_map", cfg.format, map),
                  write_table(cfg.out_dir, "fig3_contours", cfg.format, ct)},
                 out);
  return out;
}

std::vector<std::string> preset_fig3_batch(const RunConfig& cfg) {
  // Illustrative operating points inside the high-transfer plateau; the
  // measured pairs behind the published panels are not public.
  const std::vector<std::pair<double, double>> points_mhz{
      {46.0, -0.5}, {50.0, 0.8}, {52.0, 0.0}, {55.6, 0.3}, {60.0, -0.9}};
  std::vector<std::pair<double, double>> points;
  for (auto [a, o] : points_mhz) {
    points.emplace_back(units::mhz_to_angular(a), units::mhz_to_angular(o));
  }

  EvolveOptions opts{cfg.n_samples, cfg.tol, false};
  const BatchResult batch = run_trajectory_batch(
      points, cfg.system, cfg.drive, cfg.engine, opts, cfg.threads);

  Table t;
  t.meta("engine", engine_name(cfg.engine));
  t.columns = {"point", "amplitude_rad_per_us", "offset_rad_per_us", "t_us"};
  const auto& names = batch.trajectories.front().level_names;
  for (const auto& n : names) t.columns.push_back("p_" + n);
  for (std::size_t p = 0; p < batch.trajectories.size(); ++p) {
    const auto& traj = batch.trajectories[p];
    for (int k = 0; k < traj.n_samples(); ++k) {
      std::vector<double> row{static_cast<double>(p), points[p].first,
                              points[p].second, traj.times[k]};
      for (int l = 0; l < traj.n_levels(); ++l) {
        row.push_back(traj.populations(k, l));
      }
      t.add_row(std::move(row));
    }
  }

  json manifest = base_manifest("fig3-batch", cfg);
  manifest["note"] = "illustrative in-plateau points, not measured values";
  json pts = json::array();
  for (auto [a, o] : points_mhz) {
    json jp;
    jp["amplitude_mhz"] = a;
    jp["offset_mhz"] = o;
    pts.push_back(std::move(jp));
  }
  manifest["points"] = std::move(pts);
  json failures = json::array();
  for (const auto& [idx, msg] : batch.failures) {
    json jf;
    jf["point"] = idx;
    jf["message"] = msg;
    failures.push_back(std::move(jf));
  }
  manifest["failures"] = std::move(failures);

  std::vector<std::string> out;
  write_manifest(cfg, std::move(manifest),
                 {write_table(cfg.out_dir, "fig3_batch", cfg.format, t)}, out);
  return out;
}

std::vector<std::string> preset_fig4_scaling(const RunConfig& cfg) {
  Table series;
  series.columns = {"mod_depth_mhz",  "amplitude_rad_per_us",
                    "omega4",         "p_g",
                    "ln_p_g",         "theory_ln_p_g"};
  Table fits;
  fits.columns = {"mod_depth_mhz",    "velocity_rad_per_us2",
                  "slope",            "intercept",
                  "r_squared",        "theory_slope_eq8",
                  "theory_slope_eq9", "n_points",
                  "n_rejected"};

  json jfits = json::array();
  const double delta = cfg.system.anharmonicity();

  for (std::size_t di = 0; di < cfg.scaling.mod_depths.size(); ++di) {
    DriveSpec drive = cfg.drive;
    drive.mod_depth = cfg.scaling.mod_depths[di];
    const double v = drive.chirp_rate();
    const double d_mhz = units::angular_to_mhz(drive.mod_depth);

    SweepGrid grid;
    grid.amplitudes = cfg.scaling.amplitude_grids[di];
    grid.offsets = {drive.offset};
    grid.base_drive = drive;
    grid.base_system = cfg.system;
    grid.engine = Engine::kSchrodinger;
    const SweepResult result = run_sweep(grid, cfg.tol, cfg.threads);

    std::vector<ScalingPoint> points;
    for (std::size_t j = 0; j < grid.amplitudes.size(); ++j) {
      points.push_back(ScalingPoint{grid.amplitudes[j],
                                    result.p_final[0](0, static_cast<int>(j))});
    }
    const ScalingFit fit = fit_scaling(points, v, delta);
    const double theory =
        theory_slope(v, delta, cfg.convention);

    for (const auto& p : points) {
      const double x = p.omega * p.omega * p.omega * p.omega;
      series.add_row({d_mhz, p.omega, x,
                      p.p_g, p.p_g > 0.0 ? std::log(p.p_g) : 0.0,
                      theory * x});
    }
    fits.add_row({d_mhz, v, fit.slope, fit.intercept, fit.r_squared,
                  fit.theory_slope_eq8, fit.theory_slope_eq9,
                  static_cast<double>(fit.points.size()),
                  static_cast<double>(fit.rejected.size())});

    json jf;
    jf["mod_depth_mhz"] = d_mhz;
    json amps = json::array();
    for (double a : grid.amplitudes) amps.push_back(units::angular_to_mhz(a));
    jf["amplitudes_mhz"] = std::move(amps);
    jf["slope"] = fit.slope;
    jf["r_squared"] = fit.r_squared;
    jf["theory_slope_selected"] = theory;
    jfits.push_back(std::move(jf));
  }

  json manifest = base_manifest("fig4-scaling", cfg);
  manifest["fits"] = std::move(jfits);

  std::vector<std::string> out;
  write_manifest(
      cfg, std::move(manifest),
      {write_table(cfg.out_dir, "fig4_scaling", cfg.format, series),
       write_table(cfg.out_dir, "fig4_fits", cfg.format, fits)},
      out);
  return out;
}

}  // namespace

Table trajectory_table(const Trajectory& traj) {
  Table t;
  t.columns = {"t_us", "omega_d_rad_per_us", "omega_rad_per_us"};
  for (const auto& name : traj.level_names) {
    t.columns.push_back("p_" + name);
  }
  for (int k = 0; k < traj.n_samples(); ++k) {
    std::vector<double> row{traj.times[k], traj.drive[k].omega_d,
                            traj.drive[k].omega};
    for (int l = 0; l < traj.n_levels(); ++l) {
      row.push_back(traj.populations(k, l));
    }
    t.add_row(std::move(row));
  }
  return t;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "fig1-eigen",  "fig2-trajectory", "fig2-majorana",
      "fig3-batch",  "fig3-map",        "fig4-scaling"};
  return names;
}

std::vector<std::string> run_preset(const std::string& name,
                                    const RunConfig& config) {
  config.validate();
  if (name == "fig1-eigen") return preset_fig1(config);
  if (name == "fig2-trajectory") return preset_fig2_trajectory(config);
  if (name == "fig2-majorana") return preset_fig2_majorana(config);
  if (name == "fig3-map") return preset_fig3_map(config);
  if (name == "fig3-batch") return preset_fig3_batch(config);
  if (name == "fig4-scaling") return preset_fig4_scaling(config);
  throw ValidationError("unknown preset '" + name +
                        "'; expected one of fig1-eigen, fig2-trajectory, "
                        "fig2-majorana, fig3-batch, fig3-map, fig4-scaling");
}

}  // namespace qlzsm

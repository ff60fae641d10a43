// Command-line front end: chirped two-photon population-transfer simulations,
// spectra, Majorana constellations, parameter sweeps and scaling fits.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "qlzsm/majorana.hpp"
#include "qlzsm/presets.hpp"
#include "qlzsm/spectra.hpp"
#include "qlzsm/version.hpp"

namespace {

using namespace qlzsm;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Overrides {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::string engine;
  std::string convention;
  double tol = -1.0;
  int threads = -1;
  int samples = -1;
};

RunConfig make_config(const Overrides& o) {
  RunConfig cfg =
      o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  // Precedence: flags > file > defaults.
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.format.empty()) {
    if (o.format == "csv") cfg.format = OutputFormat::kCsv;
    else if (o.format == "json") cfg.format = OutputFormat::kJson;
    else throw ValidationError("--format must be csv or json");
  }
  if (!o.engine.empty()) {
    if (o.engine == "schrodinger") cfg.engine = Engine::kSchrodinger;
    else if (o.engine == "lindblad") cfg.engine = Engine::kLindblad;
    else if (o.engine == "effective") cfg.engine = Engine::kEffective;
    else throw ValidationError(
        "--engine must be schrodinger, lindblad or effective");
  }
  if (!o.convention.empty()) {
    if (o.convention == "eq8") cfg.convention = Omega2phConvention::kEq8Coupling;
    else if (o.convention == "eq9") cfg.convention = Omega2phConvention::kEq9Text;
    else throw ValidationError("--convention must be eq8 or eq9");
  }
  if (o.tol > 0.0) cfg.tol = o.tol;
  if (o.threads >= 0) cfg.threads = o.threads;
  if (o.samples >= 2) cfg.n_samples = o.samples;
  cfg.validate();
  return cfg;
}

void report_files(const std::vector<std::string>& files,
                  const std::string& dir) {
  for (const auto& f : files) {
    std::cout << dir << "/" << f << "\n";
  }
}

int cmd_simulate(const Overrides& o) {
  const RunConfig cfg = make_config(o);
  EvolveOptions opts{cfg.n_samples, cfg.tol, false};
  Trajectory traj;
  switch (cfg.engine) {
    case Engine::kSchrodinger:
      traj = evolve_schrodinger(cfg.system, cfg.drive,
                                PureState::basis_state(cfg.system.n_levels, 0),
                                opts);
      break;
    case Engine::kLindblad:
      traj = evolve_lindblad(cfg.system, cfg.drive,
                             DensityMatrix::ground(cfg.system.n_levels), opts);
      break;
    case Engine::kEffective:
      traj = evolve_effective(cfg.system, cfg.drive, opts);
      break;
  }
  Table t = trajectory_table(traj);
  t.meta("engine", engine_name(cfg.engine));
  for (const auto& w : traj.warnings) std::cerr << "warning: " << w << "\n";
  report_files({write_table(cfg.out_dir, "trajectory", cfg.format, t)},
               cfg.out_dir);
  return kExitOk;
}

int cmd_eigen(const Overrides& o) {
  const RunConfig cfg = make_config(o);
  const auto spectrum =
      instantaneous_spectrum(cfg.system, cfg.drive, cfg.n_samples);

  Table t;
  t.columns = {"t_us"};
  for (const auto& br : spectrum) {
    const std::string b = std::to_string(br.label + 1);
    t.columns.push_back("energy_" + b + "_rad_per_us");
    for (int l = 0; l < cfg.system.n_levels; ++l) {
      t.columns.push_back("comp_" + std::string{"gefh"[l]} + "_" + b);
    }
    t.columns.push_back("rgb_r_" + b);
    t.columns.push_back("rgb_g_" + b);
    t.columns.push_back("rgb_b_" + b);
  }
  const int n = static_cast<int>(spectrum.front().times.size());
  for (int k = 0; k < n; ++k) {
    std::vector<double> row{spectrum.front().times[k]};
    for (const auto& br : spectrum) {
      row.push_back(br.energies[k]);
      for (int l = 0; l < cfg.system.n_levels; ++l) {
        row.push_back(br.compositions(k, l));
      }
      const Eigen::Vector3d rgb = composition_rgb(br.compositions.row(k));
      row.push_back(rgb(0));
      row.push_back(rgb(1));
      row.push_back(rgb(2));
    }
    t.add_row(std::move(row));
  }
  report_files({write_table(cfg.out_dir, "eigen", cfg.format, t)}, cfg.out_dir);
  return kExitOk;
}

int cmd_majorana(const Overrides& o) {
  const RunConfig cfg = make_config(o);
  if (cfg.system.n_levels != 3) {
    throw ValidationError(
        "the stellar representation is defined for the three-level system; "
        "set n_levels = 3");
  }
  EvolveOptions opts{cfg.n_samples, cfg.tol, true};
  const auto traj = evolve_schrodinger(cfg.system, cfg.drive,
                                       PureState::basis_state(3, 0), opts);
  const auto stars = stars_trajectory(traj);
  Table t;
  t.columns = {"t_us", "theta1_rad", "phi1_rad", "theta2_rad", "phi2_rad"};
  for (int k = 0; k < traj.n_samples(); ++k) {
    t.add_row({traj.times[k], stars[k].star1.theta, stars[k].star1.phi,
               stars[k].star2.theta, stars[k].star2.phi});
  }
  report_files({write_table(cfg.out_dir, "majorana", cfg.format, t)},
               cfg.out_dir);
  return kExitOk;
}

int cmd_sweep(const Overrides& o) {
  RunConfig cfg = make_config(o);
  cfg.preset = "fig3-map";  // same machinery, configured grid
  report_files(run_preset("fig3-map", cfg), cfg.out_dir);
  return kExitOk;
}

int cmd_lzsm_fit(const Overrides& o) {
  RunConfig cfg = make_config(o);
  report_files(run_preset("fig4-scaling", cfg), cfg.out_dir);
  return kExitOk;
}

int cmd_preset(const Overrides& o, const std::string& name) {
  const RunConfig cfg = make_config(o);
  report_files(run_preset(name, cfg), cfg.out_dir);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon chirped population transfer in a weakly "
               "anharmonic multi-level system"};
  app.set_version_flag("--version", qlzsm::kVersion);
  app.fallthrough();
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config_path, "configuration file");
  app.add_option("--out-dir", o.out_dir, "output directory");
  app.add_option("--format", o.format, "output format: csv|json");
  app.add_option("--engine", o.engine,
                 "engine: schrodinger|lindblad|effective");
  app.add_option("--convention", o.convention,
                 "two-photon gap convention: eq8|eq9");
  app.add_option("--tol", o.tol, "integrator tolerance");
  app.add_option("--threads", o.threads, "worker threads (0 = hardware)");
  app.add_option("--samples", o.samples, "trajectory samples");

  auto* sim = app.add_subcommand("simulate", "propagate one trajectory");
  auto* eig = app.add_subcommand("eigen", "instantaneous spectrum");
  auto* maj = app.add_subcommand("majorana", "stellar-representation track");
  auto* swp = app.add_subcommand("sweep", "amplitude/offset map + contours");
  auto* fit = app.add_subcommand("lzsm-fit", "amplitude-scaling fits");
  auto* pre = app.add_subcommand("preset", "run a named experiment preset");
  std::string preset_name;
  pre->add_option("name", preset_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o);
    if (eig->parsed()) return cmd_eigen(o);
    if (maj->parsed()) return cmd_majorana(o);
    if (swp->parsed()) return cmd_sweep(o);
    if (fit->parsed()) return cmd_lzsm_fit(o);
    if (pre->parsed()) return cmd_preset(o, preset_name);
  } catch (const qlzsm::IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (last good time " << e.last_good_time() << " us)\n";
    return kExitNumerical;
  } catch (const qlzsm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qlzsm::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

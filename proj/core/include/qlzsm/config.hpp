#pragma once

#include <string>
#include <vector>

#include "qlzsm/lzsm.hpp"
#include "qlzsm/sweep.hpp"

namespace qlzsm {

enum class OutputFormat { kCsv, kJson };
const char* format_name(OutputFormat f);

// Grid for the amplitude/offset map, axes given as inclusive ranges.
struct SweepSettings {
  double amp_min = 0.0;                                // rad/us
  double amp_max = units::mhz_to_angular(70.0);
  double amp_step = units::mhz_to_angular(1.0);
  double offset_min = -units::mhz_to_angular(3.0);
  double offset_max = units::mhz_to_angular(3.0);
  double offset_step = units::mhz_to_angular(0.1);
  std::vector<double> contour_levels{0.9, 0.5};

  std::vector<double> amplitude_axis() const;
  std::vector<double> offset_axis() const;
};

// Modulation depths and per-depth amplitude grids for the scaling analysis.
// The default grids span final ground populations of roughly 0.6 down to
// 0.03, where the single-passage exponential is the dominant behavior.
struct ScalingSettings {
  std::vector<double> mod_depths{-units::mhz_to_angular(12.5),
                                 -units::mhz_to_angular(20.0),
                                 -units::mhz_to_angular(25.0)};
  // One grid per modulation depth; regenerated to match mod_depths when the
  // configuration overrides either side.
  std::vector<std::vector<double>> amplitude_grids;

  ScalingSettings();
  static std::vector<double> default_grid_for(double mod_depth);
};

struct RunConfig {
  SystemSpec system;
  DriveSpec drive;
  Engine engine = Engine::kSchrodinger;
  Omega2phConvention convention = kDefaultConvention;
  double tol = 1e-10;
  int n_samples = 401;
  int threads = 0;  // 0 = hardware concurrency
  OutputFormat format = OutputFormat::kCsv;
  std::string out_dir = "out";
  std::string preset;
  SweepSettings sweep;
  ScalingSettings scaling;

  void validate() const;
};

// Key/value sections with mandatory unit suffixes on dimensionful fields
// (a bare 0 is accepted for any unit). Unknown or duplicate keys are
// rejected with file/line diagnostics. Every field has a default, so an
// empty file is a valid configuration.
RunConfig load_config(const std::string& path);

// Parses the text form directly; file/line diagnostics use the given name.
RunConfig parse_config(const std::string& text, const std::string& name);

}  // namespace qlzsm

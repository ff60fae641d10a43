#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qlzsm/propagate.hpp"

namespace qlzsm {

enum class Engine { kSchrodinger, kLindblad, kEffective };
const char* engine_name(Engine e);

// 2-D grid over peak amplitude and frequency offset, everything else shared.
struct SweepGrid {
  std::vector<double> amplitudes;  // rad/us, strictly increasing
  std::vector<double> offsets;     // rad/us, strictly increasing
  DriveSpec base_drive;
  SystemSpec base_system;
  Engine engine = Engine::kSchrodinger;

  void validate() const;
  static std::vector<double> linspace(double lo, double hi, int n);
};

struct CellFailure {
  int offset_index = 0;
  int amplitude_index = 0;
  std::string message;
};

struct SweepResult {
  SweepGrid grid;
  // One matrix per level, indexed (offset, amplitude).
  std::vector<Eigen::MatrixXd> p_final;
  std::vector<CellFailure> failures;
  double tol = 0.0;
  int parallelism = 1;
  double wall_time_s = 0.0;  // informational only, never serialized

  int levels() const { return static_cast<int>(p_final.size()); }
  // Final population of f: index 2 for the ladder engines, index 1 for the
  // two-level effective engine.
  const Eigen::MatrixXd& p_f() const;
};

// One propagation per cell. Cells are independent; results are written into
// preallocated matrices by index, so the outcome is identical for any degree
// of parallelism. parallelism = 0 picks the hardware concurrency.
SweepResult run_sweep(const SweepGrid& grid, double tol, int parallelism);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct ContourSet {
  double level = 0.0;
  std::vector<std::vector<Point2>> polylines;
};

// Marching-squares iso-contours of a scalar field sampled on a rectilinear
// grid; field is indexed (y, x). Crossing points are interpolated linearly
// along cell edges; segments are chained into closed or
// boundary-terminated polylines.
std::vector<std::vector<Point2>> contour_polylines(
    const std::vector<double>& xs, const std::vector<double>& ys,
    const Eigen::MatrixXd& field, double level);

// Contours of the final f population. Levels must lie in (0, 1) and the grid
// must be at least 2x2.
std::vector<ContourSet> extract_contours(const SweepResult& result,
                                         const std::vector<double>& levels);

struct BatchResult {
  std::vector<Trajectory> trajectories;  // aligned with the input points
  std::vector<std::pair<int, std::string>> failures;
};

// Full trajectories for a list of (amplitude, offset) points sharing the
// base drive. Parallel execution, order-preserving output.
BatchResult run_trajectory_batch(
    const std::vector<std::pair<double, double>>& points,
    const SystemSpec& system, const DriveSpec& base_drive, Engine engine,
    const EvolveOptions& opts, int parallelism = 0);

}  // namespace qlzsm

#include "qlzsm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace qlzsm {

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::kSchrodinger: return "schrodinger";
    case Engine::kLindblad: return "lindblad";
    case Engine::kEffective: return "effective";
  }
  return "?";
}

void SweepGrid::validate() const {
  base_system.validate();
  base_drive.validate();
  auto check_axis = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty()) {
      throw ValidationError(std::string("sweep axis '") + name + "' is empty");
    }
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (!(axis[i] > axis[i - 1])) {
        throw ValidationError(std::string("sweep axis '") + name +
                              "' must be strictly increasing");
      }
    }
  };
  check_axis(amplitudes, "amplitudes");
  check_axis(offsets, "offsets");
  for (double a : amplitudes) {
    if (a < 0.0) throw ValidationError("amplitudes must be >= 0");
  }
}

std::vector<double> SweepGrid::linspace(double lo, double hi, int n) {
  if (n < 1 || (n > 1 && !(hi > lo))) {
    throw ValidationError("linspace: bad axis bounds");
  }
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(n - 1);
  }
  return v;
}

const Eigen::MatrixXd& SweepResult::p_f() const {
  return grid.engine == Engine::kEffective ? p_final.at(1) : p_final.at(2);
}

namespace {

Eigen::VectorXd final_populations(const SystemSpec& system,
                                  const DriveSpec& drive, Engine engine,
                                  double tol) {
  EvolveOptions opts;
  opts.n_samples = 2;  // endpoints only
  opts.tol = tol;
  switch (engine) {
    case Engine::kSchrodinger: {
      auto traj = evolve_schrodinger(
          system, drive, PureState::basis_state(system.n_levels, 0), opts);
      return traj.populations.row(traj.n_samples() - 1);
    }
    case Engine::kLindblad: {
      auto traj = evolve_lindblad(system, drive,
                                  DensityMatrix::ground(system.n_levels), opts);
      return traj.populations.row(traj.n_samples() - 1);
    }
    case Engine::kEffective: {
      auto traj = evolve_effective(system, drive, opts);
      return traj.populations.row(traj.n_samples() - 1);
    }
  }
  throw ValidationError("unknown engine");
}

void parallel_for_cells(std::size_t n_cells, int parallelism,
                        const std::function<void(std::size_t)>& work) {
  unsigned n_threads = parallelism > 0
                           ? static_cast<unsigned>(parallelism)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<std::size_t>(n_threads, n_cells);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_cells; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < n_cells;
           i = next.fetch_add(1)) {
        work(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

SweepResult run_sweep(const SweepGrid& grid, double tol, int parallelism) {
  grid.validate();
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  const int n_amp = static_cast<int>(grid.amplitudes.size());
  const int n_off = static_cast<int>(grid.offsets.size());
  const int n_levels =
      grid.engine == Engine::kEffective ? 2 : grid.base_system.n_levels;

  SweepResult result;
  result.grid = grid;
  result.tol = tol;
  result.parallelism = parallelism;
  result.p_final.assign(n_levels, Eigen::MatrixXd::Zero(n_off, n_amp));

  std::mutex failure_mutex;
  const std::size_t n_cells =
      static_cast<std::size_t>(n_amp) * static_cast<std::size_t>(n_off);

  parallel_for_cells(n_cells, parallelism, [&](std::size_t idx) {
    const int row = static_cast<int>(idx) / n_amp;
    const int col = static_cast<int>(idx) % n_amp;
    DriveSpec drive = grid.base_drive;
    drive.omega_max = grid.amplitudes[col];
    drive.offset = grid.offsets[row];
    try {
      const Eigen::VectorXd pops =
          final_populations(grid.base_system, drive, grid.engine, tol);
      for (int k = 0; k < n_levels; ++k) {
        result.p_final[k](row, col) = pops(k);
      }
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      result.failures.push_back(CellFailure{row, col, e.what()});
    }
  });

  // Completion order is scheduling-dependent; keep the failure report stable.
  std::sort(result.failures.begin(), result.failures.end(),
            [](const CellFailure& a, const CellFailure& b) {
              return std::pair(a.offset_index, a.amplitude_index) <
                     std::pair(b.offset_index, b.amplitude_index);
            });

  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

namespace {

struct PointKey {
  std::uint64_t x = 0, y = 0;
  bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    return std::hash<std::uint64_t>()(k.x * 0x9e3779b97f4a7c15ull ^ k.y);
  }
};

PointKey key_of(const Point2& p) {
  // +0.0 and -0.0 must key identically.
  const double x = p.x == 0.0 ? 0.0 : p.x;
  const double y = p.y == 0.0 ? 0.0 : p.y;
  PointKey k;
  std::memcpy(&k.x, &x, sizeof(double));
  std::memcpy(&k.y, &y, sizeof(double));
  return k;
}

struct Segment {
  Point2 a, b;
};

// Crossing point on the grid edge (xa,ya,va) -> (xb,yb,vb). Callers pass the
// edge in a canonical orientation so shared edges of adjacent cells yield
// bit-identical points.
Point2 edge_point(double xa, double ya, double va, double xb, double yb,
                  double vb, double level) {
  const double t = (level - va) / (vb - va);
  return Point2{xa + t * (xb - xa), ya + t * (yb - ya)};
}

}  // namespace

std::vector<std::vector<Point2>> contour_polylines(
    const std::vector<double>& xs, const std::vector<double>& ys,
    const Eigen::MatrixXd& field, double level) {
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  if (nx < 2 || ny < 2) {
    throw DomainError("contour extraction needs at least a 2x2 grid");
  }
  if (field.rows() != ny || field.cols() != nx) {
    throw ValidationError("field shape does not match the axes");
  }

  std::vector<Segment> segments;
  for (int i = 0; i + 1 < ny; ++i) {
    for (int j = 0; j + 1 < nx; ++j) {
      const double v00 = field(i, j), v10 = field(i, j + 1);
      const double v01 = field(i + 1, j), v11 = field(i + 1, j + 1);
      int mask = 0;
      if (v00 > level) mask |= 1;
      if (v10 > level) mask |= 2;
      if (v11 > level) mask |= 4;
      if (v01 > level) mask |= 8;
      if (mask == 0 || mask == 15) continue;

      // Canonical edge orientations: left-to-right, bottom-to-top.
      const Point2 bottom = (mask & 1) != ((mask >> 1) & 1)
                                ? edge_point(xs[j], ys[i], v00, xs[j + 1],
                                             ys[i], v10, level)
                                : Point2{};
      const Point2 top = ((mask >> 3) & 1) != ((mask >> 2) & 1)
                             ? edge_point(xs[j], ys[i + 1], v01, xs[j + 1],
                                          ys[i + 1], v11, level)
                             : Point2{};
      const Point2 left = (mask & 1) != ((mask >> 3) & 1)
                              ? edge_point(xs[j], ys[i], v00, xs[j],
                                           ys[i + 1], v01, level)
                              : Point2{};
      const Point2 right = ((mask >> 1) & 1) != ((mask >> 2) & 1)
                               ? edge_point(xs[j + 1], ys[i], v10, xs[j + 1],
                                            ys[i + 1], v11, level)
                               : Point2{};

      switch (mask) {
        case 1: case 14: segments.push_back({left, bottom}); break;
        case 2: case 13: segments.push_back({bottom, right}); break;
        case 4: case 11: segments.push_back({right, top}); break;
        case 8: case 7:  segments.push_back({top, left}); break;
        case 3: case 12: segments.push_back({left, right}); break;
        case 6: case 9:  segments.push_back({bottom, top}); break;
        case 5: case 10: {
          // Saddle: the cell-center average decides which diagonal pair of
          // corners the above-level region connects through.
          const double center = 0.25 * (v00 + v10 + v01 + v11);
          const bool center_above = center > level;
          if ((mask == 5 && !center_above) || (mask == 10 && center_above)) {
            segments.push_back({left, bottom});
            segments.push_back({right, top});
          } else {
            segments.push_back({bottom, right});
            segments.push_back({top, left});
          }
          break;
        }
        default: break;
      }
    }
  }

  // Chain segments into polylines via exact endpoint matching.
  std::unordered_map<PointKey, std::vector<int>, PointKeyHash> by_endpoint;
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    by_endpoint[key_of(segments[s].a)].push_back(s);
    by_endpoint[key_of(segments[s].b)].push_back(s);
  }

  std::vector<bool> used(segments.size(), false);
  std::vector<std::vector<Point2>> polylines;

  auto walk = [&](int start_seg, bool from_a) {
    std::vector<Point2> line;
    int seg = start_seg;
    Point2 at = from_a ? segments[seg].a : segments[seg].b;
    line.push_back(at);
    while (true) {
      used[seg] = true;
      const Point2 next = key_of(segments[seg].a) == key_of(at)
                              ? segments[seg].b
                              : segments[seg].a;
      line.push_back(next);
      at = next;
      int continuation = -1;
      for (int cand : by_endpoint[key_of(at)]) {
        if (!used[cand]) {
          continuation = cand;
          break;
        }
      }
      if (continuation < 0) break;
      seg = continuation;
    }
    polylines.push_back(std::move(line));
  };

  // Open chains first (endpoints of degree one), then remaining loops.
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (used[s]) continue;
    const bool a_open = by_endpoint[key_of(segments[s].a)].size() == 1;
    const bool b_open = by_endpoint[key_of(segments[s].b)].size() == 1;
    if (a_open || b_open) walk(s, a_open);
  }
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (!used[s]) walk(s, true);
  }
  return polylines;
}

std::vector<ContourSet> extract_contours(const SweepResult& result,
                                         const std::vector<double>& levels) {
  std::vector<ContourSet> out;
  out.reserve(levels.size());
  for (double level : levels) {
    if (!(level > 0.0 && level < 1.0)) {
      throw DomainError("contour level must lie strictly inside (0, 1)");
    }
    ContourSet set;
    set.level = level;
    set.polylines = contour_polylines(result.grid.amplitudes,
                                      result.grid.offsets, result.p_f(), level);
    out.push_back(std::move(set));
  }
  return out;
}

BatchResult run_trajectory_batch(
    const std::vector<std::pair<double, double>>& points,
    const SystemSpec& system, const DriveSpec& base_drive, Engine engine,
    const EvolveOptions& opts, int parallelism) {
  if (points.empty()) {
    throw ValidationError("trajectory batch needs at least one point");
  }
  system.validate();
  base_drive.validate();

  BatchResult result;
  result.trajectories.resize(points.size());
  std::mutex failure_mutex;

  parallel_for_cells(points.size(), parallelism, [&](std::size_t i) {
    DriveSpec drive = base_drive;
    drive.omega_max = points[i].first;
    drive.offset = points[i].second;
    try {
      switch (engine) {
        case Engine::kSchrodinger:
          result.trajectories[i] = evolve_schrodinger(
              system, drive, PureState::basis_state(system.n_levels, 0), opts);
          break;
        case Engine::kLindblad:
          result.trajectories[i] = evolve_lindblad(
              system, drive, DensityMatrix::ground(system.n_levels), opts);
          break;
        case Engine::kEffective:
          result.trajectories[i] = evolve_effective(system, drive, opts);
          break;
      }
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      result.failures.emplace_back(static_cast<int>(i), e.what());
    }
  });

  std::sort(result.failures.begin(), result.failures.end());
  return result;
}

}  // namespace qlzsm

#pragma once

#include <string>
#include <vector>

#include "qlzsm/config.hpp"
#include "qlzsm/io.hpp"

namespace qlzsm {

// fig1-eigen, fig2-trajectory, fig2-majorana, fig3-batch, fig3-map,
// fig4-scaling.
const std::vector<std::string>& preset_names();

// Columnar form of a trajectory: time, drive values, one population column
// per level.
Table trajectory_table(const Trajectory& traj);

// Runs one named experiment preset: writes its data files plus manifest.json
// into config.out_dir and returns the file names. Output is deterministic:
// identical configuration produces byte-identical files.
std::vector<std::string> run_preset(const std::string& name,
                                    const RunConfig& config);

}  // namespace qlzsm

#pragma once

#include "eroas/episode.hpp"

namespace eroas {

// Static SVG renderings of episode logs: XY top view over obstacle
// outlines, XZ depth profile, and the yaw-rate time series. Multiple logs
// overlay with a legend. Returns the three file paths written
// (<prefix>_topview.svg, <prefix>_profile.svg, <prefix>_yawrate.svg).
std::vector<std::string> emit_plots(const std::vector<TrajectoryLog>& logs,
                                    const World& world,
                                    const std::string& prefix);

}  // namespace eroas
